// The workbench: table inputs, error sliders, live estimate panel, and
// the synthetic stratum browser, all driven by the HTTP service.

import { ApiClient, ApiError, type CorrectionDoc, type StratumDoc } from './api';
import { LiveRequester } from './live';
import { renderCorrectPanel, renderError } from './panels/correct-panel';
import { renderHeatmap, type LatticeSelection } from './panels/heatmap';
import { renderEstimableCurve, renderStratumCard } from './panels/stratum-card';
import {
  DEFAULT_STATE,
  stateToCorrectRequest,
  type WorkbenchState,
} from './state';

const TABLE_FIELDS = ['a', 'b', 'n1', 'n0'] as const;
const SLIDER_FIELDS = ['sensT', 'specT', 'sensC', 'specC'] as const;

function numberInput(name: string, value: number, slider: boolean): HTMLInputElement {
  const input = document.createElement('input');
  input.type = 'number';
  input.name = name;
  input.step = slider ? '0.0001' : 'any';
  if (slider) {
    input.min = '0';
    input.max = '1';
  }
  input.value = String(value);
  return input;
}

export class Workbench {
  state: WorkbenchState;
  readonly inputs = new Map<string, HTMLInputElement>();
  readonly differentialToggle: HTMLInputElement;
  readonly methodSelect: HTMLSelectElement;
  readonly estimatePanel: HTMLElement;
  readonly heatmapPanel: HTMLElement;
  readonly stratumPanel: HTMLElement;
  readonly curvePanel: HTMLElement;
  private readonly live: LiveRequester<WorkbenchState, CorrectionDoc>;
  onStateChange: (state: WorkbenchState) => void = () => {};

  constructor(
    readonly root: HTMLElement,
    readonly api: ApiClient,
    initial: WorkbenchState = DEFAULT_STATE,
  ) {
    this.state = structuredClone(initial);
    this.live = new LiveRequester(
      (state, signal) => this.api.correct(stateToCorrectRequest(state), signal),
      (doc) => renderCorrectPanel(this.estimatePanel, doc),
      (error) => this.surfaceError(error),
    );

    const form = document.createElement('form');
    form.className = 'inputs';
    for (const field of TABLE_FIELDS) {
      form.appendChild(this.labelled(field, numberInput(field, this.state.table[field], false)));
    }
    for (const field of SLIDER_FIELDS) {
      form.appendChild(
        this.labelled(field, numberInput(field, this.state.sliders[field], true)),
      );
    }

    this.differentialToggle = document.createElement('input');
    this.differentialToggle.type = 'checkbox';
    this.differentialToggle.name = 'differential';
    this.differentialToggle.checked = this.state.differential;
    form.appendChild(this.labelled('differential', this.differentialToggle));

    this.methodSelect = document.createElement('select');
    this.methodSelect.name = 'method';
    for (const method of ['woolf_observed', 'woolf_corrected', 'delta_corrected']) {
      const option = document.createElement('option');
      option.value = method;
      option.textContent = method;
      this.methodSelect.appendChild(option);
    }
    this.methodSelect.value = this.state.varianceMethod;
    form.appendChild(this.labelled('method', this.methodSelect));

    form.addEventListener('input', () => this.readForm());
    root.appendChild(form);

    this.estimatePanel = this.panel('estimate');
    this.heatmapPanel = this.panel('heatmap-panel');
    this.stratumPanel = this.panel('stratum');
    this.curvePanel = this.panel('curve');
  }

  private panel(className: string): HTMLElement {
    const node = document.createElement('section');
    node.className = className;
    this.root.appendChild(node);
    return node;
  }

  private labelled(text: string, control: HTMLElement): HTMLLabelElement {
    const label = document.createElement('label');
    label.append(text, control);
    if (control instanceof HTMLInputElement) this.inputs.set(text, control);
    return label;
  }

  private readForm(): void {
    for (const field of TABLE_FIELDS) {
      const value = Number(this.inputs.get(field)!.value);
      if (Number.isFinite(value)) this.state.table[field] = value;
    }
    for (const field of SLIDER_FIELDS) {
      const value = Number(this.inputs.get(field)!.value);
      if (Number.isFinite(value)) this.state.sliders[field] = value;
    }
    this.state.differential = this.differentialToggle.checked;
    this.state.varianceMethod = this.methodSelect.value as WorkbenchState['varianceMethod'];
    this.onStateChange(this.state);
    this.live.request(this.state);
  }

  private surfaceError(error: unknown): void {
    const message =
      error instanceof ApiError
        ? `${error.code}: ${error.message}`
        : 'request failed; inputs preserved';
    renderError(this.estimatePanel, message);
  }

  // initial render or programmatic refresh, skipping the debounce window
  refresh(): Promise<void> {
    return this.live.requestNow(this.state);
  }

  async loadStratum(ip: number, or: number): Promise<StratumDoc> {
    const stratum = await this.api.stratum(ip, or);
    this.state.stratum = { ip, or };
    this.onStateChange(this.state);
    this.showStratum(stratum);
    return stratum;
  }

  // render a stratum document (split from loadStratum for testability)
  showStratum(stratum: StratumDoc): void {
    renderStratumCard(this.stratumPanel, stratum);
    renderHeatmap(this.heatmapPanel, stratum, (selection) => {
      this.applyLatticeSelection(stratum, selection);
    });
  }

  // clicking a lattice point: the synthetic table becomes the draft and
  // both arms' sliders take the point's errors (the what-if loop)
  applyLatticeSelection(stratum: StratumDoc, selection: LatticeSelection): void {
    const events = stratum.incidence * 2 * stratum.n_per_arm;
    // the stratum's realized table is what the service corrected; fetch
    // exact cells from the percentile card is not possible, so the draft
    // table is reconstructed server-side semantics: a + b = events with
    // the realized odds ratio. The service exposes the rounded counts
    // through n_per_arm and realized_uncorrected_or.
    const or = stratum.realized_uncorrected_or;
    const n = stratum.n_per_arm;
    // solve a/(n-a) = or * b/(n-b) with a + b = events; for the synthetic
    // strata both arms share n, so b is the root the service used. This
    // is input reconstruction, not bias arithmetic.
    const b = solveComparatorCount(events, n, or);
    const a = events - b;
    this.state.table = { a, b, n1: n, n0: n };
    this.state.sliders.sensT = selection.sensitivity;
    this.state.sliders.specT = selection.specificity;
    this.state.sliders.sensC = selection.sensitivity;
    this.state.sliders.specC = selection.specificity;
    this.writeForm();
    this.onStateChange(this.state);
    this.live.request(this.state);
  }

  private writeForm(): void {
    for (const field of TABLE_FIELDS) {
      this.inputs.get(field)!.value = String(this.state.table[field]);
    }
    for (const field of SLIDER_FIELDS) {
      this.inputs.get(field)!.value = String(this.state.sliders[field]);
    }
  }

  async loadEstimableCurve(): Promise<void> {
    renderEstimableCurve(this.curvePanel, await this.api.estimable());
  }

  dispose(): void {
    this.live.cancel();
  }
}

// rounded comparator count from pooled events, arm size, and odds ratio
function solveComparatorCount(events: number, n: number, or: number): number {
  if (or === 1) return Math.round(events / 2);
  const qa = or - 1;
  const qb = events + n + or * (n - events);
  const qc = -events * n;
  const b = (-qb + Math.sqrt(qb * qb - 4 * qa * qc)) / (2 * qa);
  return Math.round(b);
}
