import { describe, expect, it } from 'vitest';
import { correctionDocSchema } from '../src/api';
import { renderCorrectPanel, renderError } from '../src/panels/correct-panel';
import invalidFixture from './fixtures/correct-invalid.json';
import latticeFixture from './fixtures/correct-lattice-0.6.json';

function mount(): HTMLElement {
  const node = document.createElement('section');
  document.body.appendChild(node);
  return node;
}

describe('correct panel', () => {
  it('renders the invalidity diagnostic with the offending value', () => {
    const doc = correctionDocSchema.parse(invalidFixture.result);
    const panel = mount();
    renderCorrectPanel(panel, doc);

    const banners = panel.querySelectorAll('.invalid-banner');
    expect(banners.length).toBe(2);
    const text = banners[0]!.textContent ?? '';
    expect(text).toContain('corrected A = -1836.73');
    expect(text).toContain('negative_cell');
    expect(text).toContain('target arm');
    // never renders a misleading corrected estimate alongside invalidity
    expect(panel.querySelector('.corrected-estimate')).toBeNull();
  });

  it('renders corrected cells, estimate, and metrics for a valid correction', () => {
    const doc = correctionDocSchema.parse(latticeFixture.result);
    const panel = mount();
    renderCorrectPanel(panel, doc);

    expect(panel.querySelector('.corrected-cells')?.textContent).toContain(
      'A=86620.673',
    );
    expect(panel.querySelector('.corrected-estimate')?.textContent).toContain(
      'Corrected OR 1.002',
    );
    expect(panel.querySelector('.metrics')?.textContent).toContain(
      'relative bias -0.11%',
    );
  });

  it('replaces prior content with an error banner on failure', () => {
    const panel = mount();
    renderCorrectPanel(panel, correctionDocSchema.parse(latticeFixture.result));
    renderError(panel, 'precondition_failed: sensitivity out of range');
    expect(panel.children.length).toBe(1);
    expect(panel.querySelector('.error-banner')?.textContent).toContain(
      'precondition_failed',
    );
  });
});
