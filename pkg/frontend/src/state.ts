// Client-side mirror of the server session. The only mutators take
// server responses, so the mirror can never advance past server state.

import type {
  AnswerOutcome,
  AnswerPayload,
  FamilyParams,
  InferredPreference,
  QuestionDescriptor,
} from './types.js';

export interface ExplorerParams {
  family: FamilyParams;
  yMin: number;
  yMax: number;
}

export interface WizardState {
  sessionId: string | null;
  currentQuestion: QuestionDescriptor | null;
  answersSoFar: AnswerPayload[];
  inferred: InferredPreference | null;
  inferredRaw: string | null;
  explorerParams: ExplorerParams;
}

type Listener = (state: WizardState) => void;

export class WizardStore {
  private state: WizardState = {
    sessionId: null,
    currentQuestion: null,
    answersSoFar: [],
    inferred: null,
    inferredRaw: null,
    explorerParams: {
      family: { family: 'kolm_atkinson', eta: 2 },
      yMin: 1,
      yMax: 100,
    },
  };

  private listeners: Listener[] = [];

  get(): WizardState {
    return this.state;
  }

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  sessionStarted(id: string, firstQuestion: QuestionDescriptor): void {
    this.state = {
      ...this.state,
      sessionId: id,
      currentQuestion: firstQuestion,
      answersSoFar: [],
      inferred: null,
      inferredRaw: null,
    };
    this.emit();
  }

  answerAccepted(answer: AnswerPayload, outcome: AnswerOutcome): void {
    const answersSoFar = [...this.state.answersSoFar, answer];
    if (outcome.kind === 'question') {
      this.state = { ...this.state, answersSoFar, currentQuestion: outcome.question };
    } else {
      this.state = {
        ...this.state,
        answersSoFar,
        currentQuestion: null,
        inferred: outcome.preference,
        inferredRaw: outcome.rawPreference,
        explorerParams: {
          ...this.state.explorerParams,
          family: familyOf(outcome.preference),
        },
      };
    }
    this.emit();
  }

  setExplorerParams(params: ExplorerParams): void {
    this.state = { ...this.state, explorerParams: params };
    this.emit();
  }

  isComplete(): boolean {
    return this.state.inferred !== null;
  }
}

// strip the diagnostics so only the family identity reaches /v1/curve
export function familyOf(pref: InferredPreference): FamilyParams {
  const fam: FamilyParams = { family: pref.family };
  for (const key of ['eta', 'alpha', 'gamma', 'c'] as const) {
    if (typeof pref[key] === 'number') fam[key] = pref[key];
  }
  return fam;
}
