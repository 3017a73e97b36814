import { ApiClient, ApiError } from './api';
import { Store } from './store';
import type { Answer } from './types';
import { renderErrorBanner, renderSession } from './view';

export function mountApp(
  root: HTMLElement,
  client: ApiClient = new ApiClient()
): Store {
  const store = new Store();

  const form = document.createElement('form');
  form.className = 'program-form';
  const source = document.createElement('textarea');
  source.className = 'program-source';
  source.rows = 10;
  source.placeholder = 'r1: a :- not d.';
  const load = document.createElement('button');
  load.type = 'submit';
  load.className = 'load-program';
  load.textContent = 'Load program';
  form.appendChild(source);
  form.appendChild(load);

  const messages = document.createElement('div');
  messages.className = 'messages';
  const main = document.createElement('div');
  main.className = 'session-view';
  root.appendChild(form);
  root.appendChild(messages);
  root.appendChild(main);

  async function call(action: () => Promise<void>): Promise<void> {
    store.set({ busy: true });
    try {
      await action();
      store.set({ error: null, busy: false });
    } catch (err) {
      const detail = err instanceof ApiError ? err.message : String(err);
      store.set({ error: detail, busy: false });
    }
  }

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void call(async () => {
      store.set({ session: await client.createSession(source.value) });
    });
  });

  const onAnswer = (answer: Answer): void => {
    const session = store.get().session;
    if (!session || session.status !== 'awaiting_answer') return;
    void call(async () => {
      store.set({ session: await client.answer(session.id, answer) });
    });
  };

  store.subscribe((state) => {
    messages.innerHTML = '';
    renderErrorBanner(messages, state.error);
    main.innerHTML = '';
    if (state.session) {
      renderSession(main, state.session, { onAnswer });
    } else {
      main.appendChild(
        Object.assign(document.createElement('p'), {
          className: 'empty-state',
          textContent:
            state.error === null ? 'Load a program to start debugging.' : 'no diagnoses'
        })
      );
    }
  });

  store.set({});
  return store;
}
