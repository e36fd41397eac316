// Browser entry point: mounts the workbench against the real service and
// keeps the URL query string in sync so any view is a shareable link.

import { ApiClient } from './api';
import { stateFromQuery, stateToQuery, type WorkbenchState } from './state';
import { Workbench } from './workbench';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app mount point');

const api = new ApiClient(import.meta.env?.VITE_API_BASE ?? '');
const bench = new Workbench(root, api, stateFromQuery(window.location.search));

bench.onStateChange = (state: WorkbenchState) => {
  const query = stateToQuery(state);
  window.history.replaceState(null, '', `${window.location.pathname}?${query}`);
};

window.addEventListener('popstate', () => {
  // back/forward rebuilds the whole workbench from the query string
  root.replaceChildren();
  window.location.reload();
});

void bench.refresh();
void bench.loadEstimableCurve();
if (bench.state.stratum) {
  void bench.loadStratum(bench.state.stratum.ip, bench.state.stratum.or);
}
