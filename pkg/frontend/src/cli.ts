/** Subprocess plumbing: every binding call drives the skyblight CLI through
 * its documented file formats, so no engine math lives on this side. */

import { execFile } from 'node:child_process';
import { mkdtemp, rm } from 'node:fs/promises';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

/**
 * Command used to reach the CLI.  Override with SKYBLIGHT_CLI (whitespace
 * separated), e.g. "python3 -m skyblight" or an absolute script path.
 */
export function cliCommand(): string[] {
  const env = process.env.SKYBLIGHT_CLI;
  if (env && env.trim().length > 0) {
    return env.trim().split(/\s+/);
  }
  return ['python3', '-m', 'skyblight'];
}

export interface CliResult {
  code: number;
  stdout: string;
  stderr: string;
}

export function runCli(args: string[]): Promise<CliResult> {
  const [head, ...rest] = cliCommand();
  return new Promise((resolve, reject) => {
    execFile(
      head,
      [...rest, ...args],
      { maxBuffer: 64 * 1024 * 1024 },
      (error, stdout, stderr) => {
        if (error && typeof error.code !== 'number') {
          reject(error); // spawn failure (ENOENT etc.), not a nonzero exit
          return;
        }
        const code = error ? (error.code as number) : 0;
        resolve({ code, stdout: String(stdout), stderr: String(stderr) });
      },
    );
  });
}

export async function expectOk(args: string[]): Promise<CliResult> {
  const result = await runCli(args);
  if (result.code !== 0) {
    throw new Error(
      `skyblight ${args[0]} exited with code ${result.code}: ${result.stderr.trim()}`,
    );
  }
  return result;
}

/** Run `fn` inside a fresh temp dir; always cleans up. */
export async function withTempDir<T>(fn: (dir: string) => Promise<T>): Promise<T> {
  const dir = await mkdtemp(join(tmpdir(), 'skyblight-loader-'));
  try {
    return await fn(dir);
  } finally {
    await rm(dir, { recursive: true, force: true });
  }
}
