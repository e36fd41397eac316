// Workbench state and its URL deep-link encoding.
//
// The full state serializes into query parameters so any view can be
// shared as a link. Numbers round-trip exactly: String() emits the
// shortest representation that parses back to the same double.

export type VarianceMethod = 'woolf_observed' | 'woolf_corrected' | 'delta_corrected';

export interface WorkbenchState {
  table: { a: number; b: number; n1: number; n0: number };
  differential: boolean;
  sliders: {
    sensT: number;
    specT: number;
    sensC: number;
    specC: number;
  };
  varianceMethod: VarianceMethod;
  stratum: { ip: number; or: number } | null;
}

export const DEFAULT_STATE: WorkbenchState = {
  table: { a: 100, b: 100, n1: 100000, n0: 100000 },
  differential: false,
  sliders: { sensT: 1, specT: 1, sensC: 1, specC: 1 },
  varianceMethod: 'woolf_corrected',
  stratum: null,
};

const VARIANCE_METHODS: VarianceMethod[] = [
  'woolf_observed',
  'woolf_corrected',
  'delta_corrected',
];

export function stateToQuery(state: WorkbenchState): string {
  const params = new URLSearchParams();
  params.set('a', String(state.table.a));
  params.set('b', String(state.table.b));
  params.set('n1', String(state.table.n1));
  params.set('n0', String(state.table.n0));
  params.set('diff', state.differential ? '1' : '0');
  params.set('sensT', String(state.sliders.sensT));
  params.set('specT', String(state.sliders.specT));
  params.set('sensC', String(state.sliders.sensC));
  params.set('specC', String(state.sliders.specC));
  params.set('method', state.varianceMethod);
  if (state.stratum) {
    params.set('ip', String(state.stratum.ip));
    params.set('or', String(state.stratum.or));
  }
  return params.toString();
}

function num(params: URLSearchParams, key: string, fallback: number): number {
  const raw = params.get(key);
  if (raw === null) return fallback;
  const value = Number(raw);
  return Number.isFinite(value) ? value : fallback;
}

export function stateFromQuery(query: string): WorkbenchState {
  const params = new URLSearchParams(query);
  const method = params.get('method');
  const ip = params.get('ip');
  const or = params.get('or');
  return {
    table: {
      a: num(params, 'a', DEFAULT_STATE.table.a),
      b: num(params, 'b', DEFAULT_STATE.table.b),
      n1: num(params, 'n1', DEFAULT_STATE.table.n1),
      n0: num(params, 'n0', DEFAULT_STATE.table.n0),
    },
    differential: params.get('diff') === '1',
    sliders: {
      sensT: num(params, 'sensT', 1),
      specT: num(params, 'specT', 1),
      sensC: num(params, 'sensC', 1),
      specC: num(params, 'specC', 1),
    },
    varianceMethod: VARIANCE_METHODS.includes(method as VarianceMethod)
      ? (method as VarianceMethod)
      : DEFAULT_STATE.varianceMethod,
    stratum:
      ip !== null && or !== null ? { ip: Number(ip), or: Number(or) } : null,
  };
}

// Request document for POST /api/v1/correct derived from the state.
// Non-differential mode sends only the target arm; the comparator
// sliders are ignored until the toggle is flipped.
export function stateToCorrectRequest(state: WorkbenchState) {
  return {
    table: {
      a: state.table.a,
      b: state.table.b,
      n_target: state.table.n1,
      n_comparator: state.table.n0,
    },
    errors: state.differential
      ? {
          mode: 'differential' as const,
          target: {
            sensitivity: state.sliders.sensT,
            specificity: state.sliders.specT,
          },
          comparator: {
            sensitivity: state.sliders.sensC,
            specificity: state.sliders.specC,
          },
        }
      : {
          target: {
            sensitivity: state.sliders.sensT,
            specificity: state.sliders.specT,
          },
        },
    variance_method: state.varianceMethod,
  };
}
