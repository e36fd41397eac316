// Validity heatmap over a stratum's sensitivity/specificity lattice.
//
// Each lattice point is a button so the grid is keyboard-navigable.
// Invalid cells render distinctly (never as an OR of zero); hovering
// shows the exact coordinates and either the corrected OR or the
// invalidity, and clicking feeds the point back into the error sliders.

import type { StratumDoc } from '../api';

export interface LatticeSelection {
  sensitivity: number;
  specificity: number;
  orQba: number | null;
}

export type SelectHandler = (selection: LatticeSelection) => void;

function colorFor(orQba: number, lo: number, hi: number): string {
  // log-scale ramp from pale to saturated; presentation only
  const span = Math.log(hi) - Math.log(lo) || 1;
  const t = (Math.log(orQba) - Math.log(lo)) / span;
  const light = 90 - Math.round(55 * Math.min(Math.max(t, 0), 1));
  return `hsl(24 85% ${light}%)`;
}

export function renderHeatmap(
  container: HTMLElement,
  stratum: StratumDoc,
  onSelect: SelectHandler,
): void {
  container.replaceChildren();
  container.classList.add('heatmap');

  const valid = stratum.cells.filter((c) => c.valid && c.or_qba !== null);
  const ors = valid.map((c) => c.or_qba as number);
  const lo = Math.min(...ors);
  const hi = Math.max(...ors);

  const sensValues = [...new Set(stratum.cells.map((c) => c.sensitivity))].sort(
    (x, y) => x - y,
  );
  const specValues = [...new Set(stratum.cells.map((c) => c.specificity))].sort(
    (x, y) => x - y,
  );
  container.style.setProperty('--cols', String(sensValues.length));

  // specificity on the y-axis, descending so the top row is spec = 1
  const bySpec = [...specValues].reverse();
  for (const spec of bySpec) {
    for (const sens of sensValues) {
      const cell = stratum.cells.find(
        (c) => c.sensitivity === sens && c.specificity === spec,
      );
      if (!cell) continue;
      const button = document.createElement('button');
      button.type = 'button';
      button.className = cell.valid ? 'cell valid' : 'cell invalid';
      button.dataset.sensitivity = String(cell.sensitivity);
      button.dataset.specificity = String(cell.specificity);
      if (cell.valid && cell.or_qba !== null) {
        button.dataset.orQba = String(cell.or_qba);
        button.style.background = colorFor(cell.or_qba, lo, hi);
        button.title =
          `sens ${cell.sensitivity}, spec ${cell.specificity}: ` +
          `OR_QBA ${cell.or_qba}`;
      } else {
        button.title =
          `sens ${cell.sensitivity}, spec ${cell.specificity}: not estimable`;
      }
      button.addEventListener('click', () =>
        onSelect({
          sensitivity: cell.sensitivity,
          specificity: cell.specificity,
          orQba: cell.or_qba,
        }),
      );
      container.appendChild(button);
    }
  }
}
