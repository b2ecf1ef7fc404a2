// Thin fetch client for the /v1 API. All welfare math happens on the
// server; this module never derives a number itself. Responses are kept
// as raw text alongside the parsed form so byte-sensitive displays (the
// inferred-preference JSON) can show exactly what the server sent.

import type {
  AnswerOutcome,
  AnswerPayload,
  CurveRow,
  FamilyParams,
  QuestionDescriptor,
  SessionView,
} from './types.js';

const config = { baseUrl: 'http://127.0.0.1:8000' };

export function setBaseUrl(url: string): void {
  config.baseUrl = url.replace(/\/+$/, '');
}

export function getBaseUrl(): string {
  return config.baseUrl;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
    this.name = 'ApiError';
  }
}

async function request(path: string, init?: RequestInit): Promise<string> {
  const response = await fetch(`${config.baseUrl}${path}`, init);
  const text = await response.text();
  if (!response.ok) {
    let message = `HTTP ${response.status}`;
    try {
      const body = JSON.parse(text);
      if (body && typeof body.error === 'string') message = body.error;
    } catch {
      // non-JSON error body, keep the status message
    }
    throw new ApiError(response.status, message);
  }
  return text;
}

function postJson(path: string, payload: unknown): Promise<string> {
  return request(path, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload),
  });
}

// The completion body is the single-key envelope
// {"inferred_preference":X}; slicing it returns X byte for byte.
const INFERRED_PREFIX = '{"inferred_preference":';

export function sliceInferred(body: string): string | null {
  if (!body.startsWith(INFERRED_PREFIX) || !body.endsWith('}')) return null;
  return body.slice(INFERRED_PREFIX.length, -1);
}

export async function health(): Promise<boolean> {
  try {
    await request('/v1/health');
    return true;
  } catch {
    return false;
  }
}

export async function createSession(): Promise<{ id: string; firstQuestion: QuestionDescriptor }> {
  const body = JSON.parse(await postJson('/v1/sessions', {}));
  return { id: body.id, firstQuestion: body.first_question };
}

export async function postAnswer(sessionId: string, answer: AnswerPayload): Promise<AnswerOutcome> {
  const text = await postJson(`/v1/sessions/${sessionId}/answers`, { answer });
  const body = JSON.parse(text);
  if (body.next_question) {
    return { kind: 'question', question: body.next_question };
  }
  const raw = sliceInferred(text);
  if (raw === null) throw new ApiError(0, `unrecognized answer response: ${text}`);
  return { kind: 'inferred', preference: body.inferred_preference, rawPreference: raw };
}

export async function getSession(sessionId: string): Promise<SessionView> {
  return JSON.parse(await request(`/v1/sessions/${sessionId}`));
}

export async function fetchCurve(
  family: FamilyParams,
  yMin: number,
  yMax: number,
  points: number,
): Promise<CurveRow[]> {
  const query = new URLSearchParams({
    family: JSON.stringify(family),
    ymin: String(yMin),
    ymax: String(yMax),
    points: String(points),
  });
  return JSON.parse(await request(`/v1/curve?${query}`));
}

export async function inferLeakyBucket(
  ratio: number,
  take: number,
): Promise<{ ratio: number; take: number; coefficient: number }> {
  return JSON.parse(await postJson('/v1/infer/leaky-bucket', { ratio, take }));
}
