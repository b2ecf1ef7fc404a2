// End-to-end agreement: a wizard session driven over HTTP must display
// the same inferred-preference JSON, byte for byte, as the CLI replaying
// the identical transcript. Requires python3 with the protincome
// package installed (the repo root's editable install).

import { execFile, spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { promisify } from 'node:util';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import * as api from '../src/api.js';

const execFileP = promisify(execFile);

const PORT = 8123 + Math.floor(Math.random() * 2000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let workDir: string;

async function waitForHealth(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const r = await fetch(`${BASE}/v1/health`);
      if (r.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error(`service did not come up on ${BASE}`);
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), 'protincome-ui-'));
  server = spawn('python3', ['-m', 'protincome', 'serve', '--port', String(PORT)], {
    stdio: ['ignore', 'ignore', 'pipe'],
  });
  let stderr = '';
  server.stderr!.on('data', (chunk) => (stderr += chunk));
  server.on('exit', (code) => {
    if (code !== null && code !== 0) console.error(`server exited ${code}: ${stderr}`);
  });
  await waitForHealth();
  api.setBaseUrl(BASE);
}, 30000);

afterAll(() => {
  server?.kill();
  rmSync(workDir, { recursive: true, force: true });
});

async function cliElicit(transcript: unknown[]): Promise<string> {
  const path = join(workDir, `transcript-${Date.now()}-${Math.random()}.json`);
  writeFileSync(path, JSON.stringify(transcript));
  const { stdout } = await execFileP('python3', [
    '-m', 'protincome', 'elicit', '--transcript', path, '--json',
  ]);
  return stdout.trim();
}

describe('UI and CLI agreement', () => {
  it('kept half then a third infers the eta=2 power family, byte-identical', async () => {
    const answers = [
      { kind: 'protected_fraction', parameters: { fraction: 0.5 } },
      { kind: 'protected_fraction_two_rivals', parameters: { fraction: 1 / 3 } },
    ];

    const { id, firstQuestion } = await api.createSession();
    expect(firstQuestion.id).toBe('q1');

    const first = await api.postAnswer(id, answers[0]!);
    expect(first.kind).toBe('question');

    const second = await api.postAnswer(id, answers[1]!);
    expect(second.kind).toBe('inferred');
    if (second.kind !== 'inferred') return;

    expect(second.preference.family).toBe('kolm_atkinson');
    expect(second.preference.eta).toBe(2);
    expect(second.preference.coefficient).toBe(2);

    // the exact bytes the UI displays vs the CLI replay of the transcript
    const cliBytes = await cliElicit(answers);
    expect(second.rawPreference).toBe(cliBytes);
  }, 30000);

  it('agrees on an inconsistent damage transcript too, flags included', async () => {
    const answers = [
      { kind: 'constant_damage', parameters: { damage: 7.3 } },
      { kind: 'constant_damage_two_rivals', parameters: { damage: 9.1 } },
    ];

    const { id } = await api.createSession();
    await api.postAnswer(id, answers[0]!);
    const outcome = await api.postAnswer(id, answers[1]!);
    expect(outcome.kind).toBe('inferred');
    if (outcome.kind !== 'inferred') return;

    expect(outcome.preference.family).toBe('kolm_pollak');
    const cliBytes = await cliElicit(answers);
    expect(outcome.rawPreference).toBe(cliBytes);
  }, 30000);

  it('leaky-bucket side panel: ratio 2 take 8 implies coefficient 3', async () => {
    const body = await api.inferLeakyBucket(2, 8);
    expect(body.coefficient).toBe(3);
  });

  it('a leaky-bucket aside is recorded without advancing, and the session view shows it', async () => {
    const { id } = await api.createSession();
    const aside = await api.postAnswer(id, {
      kind: 'leaky_bucket',
      parameters: { ratio: 2, take: 4 },
    });
    expect(aside.kind).toBe('question');
    if (aside.kind === 'question') expect(aside.question.id).toBe('q1');

    const view = await api.getSession(id);
    expect(view.state).not.toBe('complete');
    expect(view.transcript.map((e) => e.question_id)).toEqual(['aside']);
  });

  it('curve rows for the inferred family come from the service', async () => {
    const rows = await api.fetchCurve({ family: 'kolm_atkinson', eta: 2 }, 1, 100, 64);
    expect(rows).toHaveLength(64);
    expect(rows[0]!.protected_income).toBe(0.5);
    expect(rows[0]!.relative_damage).toBe(0.5);
  });

  it('domain violations surface the inequality from the server', async () => {
    await expect(
      api.fetchCurve({ family: 'kolm_atkinson', eta: -1 }, 1, 100, 8),
    ).rejects.toMatchObject({ status: 422, message: expect.stringContaining('eta') });
  });
});
