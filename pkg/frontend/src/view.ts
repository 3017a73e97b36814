import type { Answer, DiagnosisView, SessionState } from './types';

export interface ViewHandlers {
  onAnswer: (answer: Answer) => void;
}

const STATUS_TEXT: Record<string, string> = {
  awaiting_answer: 'awaiting your answer',
  done: 'target diagnosis found',
  undiscriminable: 'remaining diagnoses cannot be told apart'
};

function diagnosisLabel(d: DiagnosisView): string {
  return d.errors
    .map((e) => `${e.kind}(${e.rule ?? e.atom ?? ''})`)
    .join(', ');
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderErrorBanner(root: HTMLElement, message: string | null): void {
  const banner = el('div', 'error-banner');
  if (message === null) {
    banner.setAttribute('hidden', '');
  } else {
    banner.textContent = message;
  }
  root.appendChild(banner);
}

function renderGrid(root: HTMLElement, state: SessionState): void {
  if (state.diagnoses.length === 0) {
    root.appendChild(el('div', 'empty-state', 'no diagnoses'));
    return;
  }
  const table = el('table', 'diagnosis-grid');
  const head = el('tr');
  head.appendChild(el('th', undefined, 'diagnosis'));
  for (const atom of state.atoms) head.appendChild(el('th', 'atom-col', atom));
  head.appendChild(el('th', undefined, 'interpretation'));
  table.appendChild(head);

  const survivors = state.status === 'done' ? new Set(state.diagnoses.map((d) => d.key)) : new Set();
  for (const diagnosis of state.diagnoses) {
    const interpretations = state.interpretations[diagnosis.key] ?? [];
    interpretations.forEach((interpretation, index) => {
      const row = el('tr', 'diagnosis-row');
      row.dataset.key = diagnosis.key;
      row.dataset.row = String(index);
      if (survivors.has(diagnosis.key)) row.classList.add('survivor');
      row.appendChild(
        el('td', 'diagnosis-label', index === 0 ? diagnosisLabel(diagnosis) : '')
      );
      const members = new Set(interpretation);
      for (const atom of state.atoms) {
        const cell = el('td', 'cell', members.has(atom) ? 'T' : '–');
        cell.dataset.atom = atom;
        cell.dataset.truth = String(members.has(atom));
        row.appendChild(cell);
      }
      row.appendChild(el('td', 'interpretation', `{${interpretation.join(',')}}`));
      table.appendChild(row);
    });
  }
  root.appendChild(table);
}

function renderProbabilities(root: HTMLElement, state: SessionState): void {
  const panel = el('div', 'probabilities');
  for (const diagnosis of state.diagnoses) {
    const value = state.probabilities[diagnosis.key] ?? 0;
    const row = el('div', 'prob-row');
    row.dataset.key = diagnosis.key;
    row.dataset.probability = String(value);
    row.appendChild(el('span', 'prob-label', diagnosisLabel(diagnosis)));
    const track = el('div', 'prob-track');
    const bar = el('div', 'prob-bar');
    bar.style.width = `${value * 100}%`;
    track.appendChild(bar);
    row.appendChild(track);
    row.appendChild(el('span', 'prob-value', `${(value * 100).toFixed(1)}%`));
    panel.appendChild(row);
  }
  root.appendChild(panel);
}

function renderQueryPanel(
  root: HTMLElement,
  state: SessionState,
  handlers: ViewHandlers
): void {
  const panel = el('div', 'query-panel');
  const active = state.status === 'awaiting_answer' && state.query !== null;
  const prompt = active
    ? `Must all of {${state.query!.atoms.join(',')}} be true in every intended answer set?`
    : STATUS_TEXT[state.status] ?? state.status;
  panel.appendChild(el('p', 'query-prompt', prompt));

  const answers: [Answer, string][] = [
    ['yes', 'Yes'],
    ['no', 'No']
  ];
  const buttons = el('div', 'answer-buttons');
  for (const [answer, label] of answers) {
    const button = el('button', 'answer', label);
    button.dataset.answer = answer;
    button.disabled = !active;
    button.addEventListener('click', () => {
      if (active) handlers.onAnswer(answer);
    });
    buttons.appendChild(button);
  }
  panel.appendChild(buttons);

  const advanced = el('details', 'advanced-answers');
  advanced.appendChild(el('summary', undefined, 'advanced answers'));
  const testAnswers: [Answer, string][] = [
    ['cautiously_true', 'Cautiously true'],
    ['cautiously_false', 'Cautiously false'],
    ['bravely_true', 'Bravely true'],
    ['bravely_false', 'Bravely false']
  ];
  for (const [answer, label] of testAnswers) {
    const button = el('button', 'answer advanced', label);
    button.dataset.answer = answer;
    button.disabled = !active;
    button.addEventListener('click', () => {
      if (active) handlers.onAnswer(answer);
    });
    advanced.appendChild(button);
  }
  panel.appendChild(advanced);
  root.appendChild(panel);
}

function renderHistory(root: HTMLElement, state: SessionState): void {
  const list = el('ul', 'history');
  for (const entry of state.history) {
    const item = el('li', 'history-entry', `{${entry.query.join(',')}} → ${entry.answer}`);
    item.dataset.answer = entry.answer;
    item.dataset.query = entry.query.join(',');
    list.appendChild(item);
  }
  root.appendChild(list);
}

export function renderSession(
  root: HTMLElement,
  state: SessionState,
  handlers: ViewHandlers
): void {
  root.innerHTML = '';
  const statusLine = el(
    'p',
    'status-line',
    `${state.diagnoses.length} diagnosis(es) — ${STATUS_TEXT[state.status] ?? state.status}`
  );
  statusLine.dataset.status = state.status;
  root.appendChild(statusLine);
  renderGrid(root, state);
  renderProbabilities(root, state);
  renderQueryPanel(root, state, handlers);
  renderHistory(root, state);
}
