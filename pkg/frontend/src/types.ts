// Wire shapes of the /v1 API. Infinities travel as the strings
// "inf" / "-inf", everything else is plain JSON numbers.

export type WireNumber = number | 'inf' | '-inf';

export interface FamilyParams {
  family: string;
  eta?: number;
  alpha?: number;
  gamma?: number;
  c?: number;
  [extra: string]: unknown;
}

export interface QuestionDescriptor {
  id: string;
  kind: string;
  incomes: number[];
  prompt: string;
  accepted: string[];
}

export interface AnswerPayload {
  kind: string;
  parameters: Record<string, number>;
}

export interface InferredPreference extends FamilyParams {
  coefficient: number;
  residuals: number[];
  inconsistency: number;
  consistent: boolean;
  flags: string[];
}

export interface CurveRow {
  y: number;
  protected_income: number;
  collateral_damage: number;
  relative_damage: number;
}

export interface SessionView {
  id: string;
  state: string;
  transcript: Array<{ question_id: string } & AnswerPayload>;
  inferred_preference: InferredPreference | null;
}

export type AnswerOutcome =
  | { kind: 'question'; question: QuestionDescriptor }
  | { kind: 'inferred'; preference: InferredPreference; rawPreference: string };
