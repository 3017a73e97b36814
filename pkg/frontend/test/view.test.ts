import { beforeEach, describe, expect, it } from 'vitest';

import { renderErrorBanner, renderSession } from '../src/view';
import type { SessionState } from '../src/types';

import oddLoopInitial from './fixtures/odd_loop_initial.json';
import oddLoopAfterYesB from './fixtures/odd_loop_after_yes_b.json';
import oddLoopAfterNoC from './fixtures/odd_loop_after_no_c.json';
import errorEmpty from './fixtures/error_empty_program.json';

const initial = oddLoopInitial as unknown as SessionState;
const afterYes = oddLoopAfterYesB as unknown as SessionState;
const afterNo = oddLoopAfterNoC as unknown as SessionState;

let root: HTMLElement;
const noop = { onAnswer: () => {} };

beforeEach(() => {
  document.body.innerHTML = '<div id="root"></div>';
  root = document.getElementById('root')!;
});

function gridRows(key: string): HTMLTableRowElement[] {
  return Array.from(root.querySelectorAll<HTMLTableRowElement>(`tr[data-key="${key}"]`));
}

describe('diagnosis grid', () => {
  it('renders one row group per diagnosis from the snapshot', () => {
    renderSession(root, initial, noop);
    const keys = initial.diagnoses.map((d) => d.key);
    expect(keys).toEqual([
      'unsatisfied:r1',
      'unsatisfied:r2',
      'unsatisfied:r3',
      'unsatisfied:r4'
    ]);
    for (const key of keys) {
      expect(gridRows(key)).toHaveLength(initial.interpretations[key].length);
    }
  });

  it('truth grids equal the expected odd-loop table', () => {
    renderSession(root, initial, noop);
    const expected: Record<string, string[]> = {
      'unsatisfied:r1': [],
      'unsatisfied:r2': ['a'],
      'unsatisfied:r3': ['a', 'b'],
      'unsatisfied:r4': ['a', 'b', 'c']
    };
    for (const [key, atoms] of Object.entries(expected)) {
      const [row] = gridRows(key);
      const cells = Array.from(row.querySelectorAll<HTMLTableCellElement>('td.cell'));
      expect(cells.map((c) => c.dataset.atom)).toEqual(initial.atoms);
      for (const cell of cells) {
        const shouldBeTrue = atoms.includes(cell.dataset.atom!);
        expect(cell.textContent).toBe(shouldBeTrue ? 'T' : '–');
      }
    }
  });

  it('every grid cell equals membership in the snapshot interpretations field', () => {
    for (const state of [initial, afterYes, afterNo]) {
      renderSession(root, state, noop);
      for (const diagnosis of state.diagnoses) {
        state.interpretations[diagnosis.key].forEach((interpretation, index) => {
          const row = gridRows(diagnosis.key)[index];
          for (const cell of row.querySelectorAll<HTMLTableCellElement>('td.cell')) {
            expect(cell.dataset.truth).toBe(
              String(interpretation.includes(cell.dataset.atom!))
            );
          }
          expect(row.querySelector('.interpretation')!.textContent).toBe(
            `{${interpretation.join(',')}}`
          );
        });
      }
    }
  });
});

describe('probability bars', () => {
  it('every bar carries exactly the snapshot probability', () => {
    for (const state of [initial, afterYes, afterNo]) {
      renderSession(root, state, noop);
      for (const diagnosis of state.diagnoses) {
        const row = root.querySelector<HTMLElement>(`.prob-row[data-key="${diagnosis.key}"]`)!;
        expect(row.dataset.probability).toBe(String(state.probabilities[diagnosis.key]));
        const bar = row.querySelector<HTMLElement>('.prob-bar')!;
        expect(bar.style.width).toBe(`${state.probabilities[diagnosis.key] * 100}%`);
      }
    }
  });
});

describe('query panel', () => {
  it('phrases the pending query from the snapshot', () => {
    renderSession(root, initial, noop);
    expect(root.querySelector('.query-prompt')!.textContent).toBe(
      'Must all of {b} be true in every intended answer set?'
    );
  });

  it('moves to the c query after the yes answer', () => {
    renderSession(root, afterYes, noop);
    expect(afterYes.query).toEqual({ atoms: ['c'] });
    expect(root.querySelector('.query-prompt')!.textContent).toBe(
      'Must all of {c} be true in every intended answer set?'
    );
  });

  it('offers the four-valued vocabulary behind an expander', () => {
    renderSession(root, initial, noop);
    const advanced = Array.from(
      root.querySelectorAll<HTMLButtonElement>('.advanced-answers button[data-answer]')
    );
    expect(advanced.map((b) => b.dataset.answer)).toEqual([
      'cautiously_true',
      'cautiously_false',
      'bravely_true',
      'bravely_false'
    ]);
  });

  it('disables all controls when the session is done', () => {
    renderSession(root, afterNo, noop);
    const buttons = Array.from(
      root.querySelectorAll<HTMLButtonElement>('button[data-answer]')
    );
    expect(buttons.length).toBeGreaterThan(0);
    expect(buttons.every((b) => b.disabled)).toBe(true);
  });

  it('sends no answer callback when done', () => {
    let calls = 0;
    renderSession(root, afterNo, { onAnswer: () => (calls += 1) });
    for (const button of root.querySelectorAll<HTMLButtonElement>('button[data-answer]')) {
      button.click();
    }
    expect(calls).toBe(0);
  });
});

describe('final state', () => {
  it('highlights the surviving diagnosis after yes(b), no(c)', () => {
    renderSession(root, afterNo, noop);
    expect(afterNo.status).toBe('done');
    expect(afterNo.diagnoses.map((d) => d.key)).toEqual(['unsatisfied:r3']);
    const survivors = root.querySelectorAll('tr.survivor');
    expect(survivors).toHaveLength(1);
    expect((survivors[0] as HTMLElement).dataset.key).toBe('unsatisfied:r3');
  });

  it('renders the history exactly as recorded', () => {
    renderSession(root, afterNo, noop);
    const entries = Array.from(root.querySelectorAll<HTMLElement>('.history-entry'));
    expect(entries.map((e) => e.textContent)).toEqual(
      afterNo.history.map((h) => `{${h.query.join(',')}} → ${h.answer}`)
    );
  });
});

describe('error banner', () => {
  it('shows the API detail verbatim', () => {
    renderErrorBanner(root, (errorEmpty as { detail: string }).detail);
    const banner = root.querySelector('.error-banner')!;
    expect(banner.textContent).toContain('no diagnosis exists');
    expect(banner.hasAttribute('hidden')).toBe(false);
  });

  it('stays hidden without an error', () => {
    renderErrorBanner(root, null);
    expect(root.querySelector('.error-banner')!.hasAttribute('hidden')).toBe(true);
  });
});
