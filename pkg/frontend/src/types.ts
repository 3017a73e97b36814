export interface ErrorAtomView {
  kind: string;
  rule?: string;
  atom?: string;
}

export interface DiagnosisView {
  key: string;
  size: number;
  errors: ErrorAtomView[];
}

export interface HistoryEntryView {
  query: string[];
  answer: string;
  timestamp: string;
}

export type SessionStatus = 'awaiting_answer' | 'done' | 'undiscriminable';

export interface SessionState {
  id: string;
  status: SessionStatus;
  atoms: string[];
  diagnoses: DiagnosisView[];
  interpretations: Record<string, string[][]>;
  probabilities: Record<string, number>;
  query: { atoms: string[] } | null;
  history: HistoryEntryView[];
  cap_reached: boolean;
  truncated: boolean;
}

export type BinaryAnswer = 'yes' | 'no';

export type TestAnswer =
  | 'cautiously_true'
  | 'cautiously_false'
  | 'bravely_true'
  | 'bravely_false';

export type Answer = BinaryAnswer | TestAnswer;
