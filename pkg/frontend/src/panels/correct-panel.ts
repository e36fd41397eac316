// Estimate panel: renders a correction document from the service.
// The panel never computes statistics, it only formats server values.

import type { CorrectionDoc } from '../api';

function fmt(value: number, digits = 3): string {
  return value.toFixed(digits);
}

function el(tag: string, className: string, text: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  node.textContent = text;
  return node;
}

export function renderCorrectPanel(container: HTMLElement, doc: CorrectionDoc): void {
  container.replaceChildren();

  if (doc.observed_estimate) {
    const obs = doc.observed_estimate;
    container.appendChild(
      el(
        'div',
        'observed-estimate',
        `Observed OR ${fmt(obs.odds_ratio)} ` +
          `(95% CI ${fmt(obs.ci_lower)} to ${fmt(obs.ci_upper)})`,
      ),
    );
  }

  if (doc.correction.kind === 'invalid') {
    for (const diag of doc.correction.diagnostics) {
      const value =
        diag.corrected_positive === null ? 'undefined' : fmt(diag.corrected_positive, 2);
      container.appendChild(
        el(
          'div',
          'invalid-banner',
          `invalid: corrected ${diag.offending_cell} = ${value} ` +
            `(${diag.reason}, ${diag.arm} arm)`,
        ),
      );
    }
    return;
  }

  const corr = doc.correction;
  container.appendChild(
    el(
      'div',
      'corrected-cells',
      `Corrected cells A=${fmt(corr.A)} B=${fmt(corr.B)} C=${fmt(corr.C)} D=${fmt(corr.D)}`,
    ),
  );

  if (doc.corrected_estimate) {
    const est = doc.corrected_estimate;
    container.appendChild(
      el(
        'div',
        'corrected-estimate',
        `Corrected OR ${fmt(est.odds_ratio)} ` +
          `(95% CI ${fmt(est.ci_lower)} to ${fmt(est.ci_upper)}, ${est.variance_method})`,
      ),
    );
  }

  if (doc.metrics) {
    const m = doc.metrics;
    const precision =
      m.relative_precision_pct === null ? 'n/a' : `${fmt(m.relative_precision_pct, 2)}%`;
    container.appendChild(
      el(
        'div',
        'metrics',
        `Bias difference ${fmt(m.bias_difference)} | ` +
          `relative bias ${fmt(m.relative_bias_pct, 2)}% | ` +
          `relative precision ${precision}`,
      ),
    );
  }
}

export function renderError(container: HTMLElement, message: string): void {
  // errors surface inline and leave previous inputs untouched
  container.replaceChildren(el('div', 'error-banner', message));
}
