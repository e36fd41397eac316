// Stratum summary card: percentile table plus the estimable proportion,
// mirroring the service's percentile rows verbatim.

import type { EstimableRow, StratumDoc } from '../api';

export function renderStratumCard(container: HTMLElement, stratum: StratumDoc): void {
  container.replaceChildren();

  const heading = document.createElement('h3');
  heading.textContent =
    `Stratum IP=${stratum.incidence}, OR=${stratum.or} ` +
    `(estimable ${stratum.estimable.toFixed(4)}, ${stratum.valid_count}/400 cells)`;
  container.appendChild(heading);

  const table = document.createElement('table');
  table.className = 'percentiles';
  const head = document.createElement('tr');
  for (const label of ['Point', 'OR_QBA', 'Sensitivity', 'Specificity',
                       'Bias difference', 'Relative bias']) {
    const th = document.createElement('th');
    th.textContent = label;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const row of stratum.percentiles) {
    const tr = document.createElement('tr');
    tr.dataset.point = row.point;
    for (const text of [
      row.point,
      row.or_qba.toFixed(3),
      String(row.sensitivity),
      row.specificity.toFixed(6),
      row.bias_difference.toFixed(3),
      `${row.relative_bias.toFixed(2)}%`,
    ]) {
      const td = document.createElement('td');
      td.textContent = text;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
}

export function renderEstimableCurve(
  container: HTMLElement,
  rows: EstimableRow[],
): void {
  container.replaceChildren();
  const list = document.createElement('table');
  list.className = 'estimable';
  for (const row of rows) {
    const tr = document.createElement('tr');
    tr.dataset.incidence = String(row.incidence);
    tr.dataset.or = String(row.or);
    for (const text of [String(row.incidence), String(row.or), row.estimable.toFixed(4)]) {
      const td = document.createElement('td');
      td.textContent = text;
      tr.appendChild(td);
    }
    const bar = document.createElement('td');
    const fill = document.createElement('div');
    fill.className = 'bar';
    fill.style.width = `${Math.round(row.estimable * 100)}%`;
    bar.appendChild(fill);
    tr.appendChild(bar);
    list.appendChild(tr);
  }
  container.appendChild(list);
}
