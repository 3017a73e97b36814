import type { SessionState } from './types';

export interface AppState {
  session: SessionState | null;
  error: string | null;
  busy: boolean;
}

type Listener = (state: AppState) => void;

export class Store {
  private state: AppState = { session: null, error: null, busy: false };
  private listeners: Listener[] = [];

  get(): AppState {
    return this.state;
  }

  set(patch: Partial<AppState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }
}
