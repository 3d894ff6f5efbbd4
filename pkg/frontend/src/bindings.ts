/** Loader-facing bindings.
 *
 * Each call round-trips through the skyblight CLI with a single-image
 * manifest in a private temp directory, which guarantees byte-identical
 * pixels with the core engine.  No state is shared between calls, so any
 * number of loader workers may call concurrently.
 */

import { readFile, writeFile } from 'node:fs/promises';
import { join } from 'node:path';

import { expectOk, withTempDir } from './cli.js';
import { decodePng, encodePng } from './png.js';
import {
  assertImage,
  assertKind,
  assertSeed,
  assertSeverity,
  KINDS,
  type AugmentPolicy,
  type BoundImage,
  type CorruptionKind,
  type ParamRow,
  type PlanDecision,
  type Severity,
} from './types.js';

/** The seven corruption kinds in canonical order. */
export function kinds(): CorruptionKind[] {
  return [...KINDS];
}

/**
 * Corrupt one frame.
 *
 * `seed` is the global seed of a single-image run with image id 0: the
 * result is byte-identical to `skyblight corrupt --seed <seed>` over a
 * manifest containing this frame as image 0.
 */
export async function corrupt(
  image: BoundImage,
  kind: string,
  severity: number,
  seed: bigint | number,
): Promise<BoundImage> {
  assertImage(image);
  assertKind(kind);
  assertSeverity(severity);
  const seedValue = assertSeed(seed);

  return withTempDir(async (dir) => {
    await writeFile(join(dir, 'frame.png'), encodePng(image));
    const manifest = {
      images: [
        { id: 0, file_name: 'frame.png', width: image.width, height: image.height },
      ],
      annotations: [],
      categories: [],
    };
    await writeFile(join(dir, 'manifest.json'), JSON.stringify(manifest));
    await expectOk([
      'corrupt',
      '--manifest', join(dir, 'manifest.json'),
      '--images-root', dir,
      '--out', join(dir, 'out'),
      '--seed', seedValue.toString(),
      '--kinds', kind,
      '--severities', String(severity),
      '--workers', '1',
      '--quiet',
    ]);
    const outPath = join(dir, 'out', kind, String(severity), 'frame.png');
    const result = decodePng(await readFile(outPath));
    if (result.width !== image.width || result.height !== image.height) {
      throw new Error('engine returned mismatched dimensions');
    }
    return result;
  });
}

function policyToJson(policy: AugmentPolicy): Record<string, unknown> {
  const body: Record<string, unknown> = {};
  if (policy.pClean !== undefined) {
    body.p_clean = policy.pClean;
  }
  if (policy.kindWeights !== undefined) {
    body.kind_weights = policy.kindWeights;
  }
  if (policy.severityWeights !== undefined) {
    body.severity_weights = Object.fromEntries(
      Object.entries(policy.severityWeights).map(([k, v]) => [String(k), v]),
    );
  }
  return body;
}

/**
 * Augmentation decision for one image id; identical to the entry that
 * `skyblight augment-plan` writes for the same (policy, epoch seed, id).
 */
export async function sampleDecision(
  imageId: number,
  policy: AugmentPolicy,
  epochSeed: bigint | number,
): Promise<PlanDecision> {
  if (!Number.isInteger(imageId)) {
    throw new Error(`image id must be an integer, got ${imageId}`);
  }
  const seedValue = assertSeed(epochSeed);

  return withTempDir(async (dir) => {
    const manifest = {
      images: [{ id: imageId, file_name: 'x.png', width: 1, height: 1 }],
      annotations: [],
      categories: [],
    };
    await writeFile(join(dir, 'manifest.json'), JSON.stringify(manifest));
    await writeFile(join(dir, 'policy.json'), JSON.stringify(policyToJson(policy)));
    await expectOk([
      'augment-plan',
      '--manifest', join(dir, 'manifest.json'),
      '--epoch-seed', seedValue.toString(),
      '--policy', join(dir, 'policy.json'),
      '--out', join(dir, 'plan.json'),
      '--quiet',
    ]);
    const plan = JSON.parse(await readFile(join(dir, 'plan.json'), 'utf-8'));
    const entry = plan.entries[0];
    if (entry.kind === 'clean') {
      return { imageId: entry.image_id, kind: 'clean' };
    }
    return {
      imageId: entry.image_id,
      kind: entry.kind as CorruptionKind,
      severity: entry.severity as Severity,
    };
  });
}

let scheduleCache: Record<string, ParamRow[]> | null = null;

/** Resolved 4-row parameter table for one kind (severities 1..4). */
export async function schedule(kind: string): Promise<ParamRow[]> {
  assertKind(kind);
  if (scheduleCache === null) {
    const result = await expectOk(['schedule']);
    scheduleCache = JSON.parse(result.stdout) as Record<string, ParamRow[]>;
  }
  return scheduleCache[kind].map((row) => ({ ...row }));
}
