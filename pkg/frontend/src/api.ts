import type { Answer, SessionState } from './types';

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function parse(response: Response): Promise<SessionState> {
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const body = await response.json();
      if (typeof body.detail === 'string') detail = body.detail;
    } catch {
      // keep the status-line fallback
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as SessionState;
}

export interface CreateOptions {
  n?: number;
  strategy?: 'split' | 'entropy';
  priors?: { fault_probs: Record<string, number> };
}

export class ApiClient {
  constructor(private readonly base: string = '') {}

  async createSession(program: string, options: CreateOptions = {}): Promise<SessionState> {
    const response = await fetch(`${this.base}/api/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ program, ...options })
    });
    return parse(response);
  }

  async getSession(id: string): Promise<SessionState> {
    return parse(await fetch(`${this.base}/api/sessions/${id}`));
  }

  async answer(id: string, answer: Answer): Promise<SessionState> {
    const response = await fetch(`${this.base}/api/sessions/${id}/answer`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ answer })
    });
    return parse(response);
  }

  async deleteSession(id: string): Promise<void> {
    const response = await fetch(`${this.base}/api/sessions/${id}`, { method: 'DELETE' });
    if (!response.ok) throw new ApiError(response.status, `${response.status}`);
  }
}
