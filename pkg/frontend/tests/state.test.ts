import { describe, expect, it } from 'vitest';
import {
  DEFAULT_STATE,
  stateFromQuery,
  stateToQuery,
  type WorkbenchState,
} from '../src/state';

describe('URL deep-link codec', () => {
  it('round-trips the default state', () => {
    const query = stateToQuery(DEFAULT_STATE);
    expect(stateFromQuery(query)).toEqual(DEFAULT_STATE);
  });

  it('round-trips awkward doubles exactly', () => {
    const state: WorkbenchState = {
      table: { a: 100045, b: 99955, n1: 1000000, n0: 1000000 },
      differential: true,
      sliders: {
        sensT: 0.6000000000000001,
        specT: 0.9473684210526316,
        sensC: 0.30000000000000004,
        specC: 1 - Number.EPSILON / 2,
      },
      varianceMethod: 'delta_corrected',
      stratum: { ip: 0.1, or: 1.001 },
    };
    const once = stateFromQuery(stateToQuery(state));
    expect(once).toEqual(state);
    // and a second pass is bitwise identical too
    expect(stateFromQuery(stateToQuery(once))).toEqual(once);
  });

  it('falls back to defaults for missing or malformed params', () => {
    const state = stateFromQuery('a=50&sensT=nonsense&method=bogus');
    expect(state.table.a).toBe(50);
    expect(state.table.b).toBe(DEFAULT_STATE.table.b);
    expect(state.sliders.sensT).toBe(1);
    expect(state.varianceMethod).toBe(DEFAULT_STATE.varianceMethod);
    expect(state.stratum).toBeNull();
  });

  it('omits the stratum keys when no stratum is selected', () => {
    const query = stateToQuery(DEFAULT_STATE);
    expect(query).not.toContain('ip=');
    expect(query).not.toContain('or=');
  });
});
