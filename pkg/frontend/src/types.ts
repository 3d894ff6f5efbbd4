/** Shared types for the loader bindings. */

/**
 * A decoded 8-bit sRGB frame: height x width x 3, row-major, tightly packed.
 * `data.length` must equal `width * height * 3`.
 */
export interface BoundImage {
  width: number;
  height: number;
  data: Uint8Array;
}

export const KINDS = [
  'fog',
  'rain',
  'low_light',
  'color_quant',
  'iso_noise',
  'far_focus',
  'near_focus',
] as const;

export type CorruptionKind = (typeof KINDS)[number];

export type Severity = 1 | 2 | 3 | 4;

/** Augmentation policy mirrored from the engine's plan sampler. */
export interface AugmentPolicy {
  pClean?: number;
  kindWeights?: Partial<Record<CorruptionKind, number>>;
  severityWeights?: Partial<Record<Severity, number>>;
}

/** One augmentation decision: stay clean or apply (kind, severity). */
export type PlanDecision =
  | { imageId: number; kind: 'clean' }
  | { imageId: number; kind: CorruptionKind; severity: Severity };

/** One severity row of a corruption's parameter schedule. */
export type ParamRow = Record<string, number>;

export function assertImage(image: BoundImage): void {
  if (
    !Number.isInteger(image.width) ||
    !Number.isInteger(image.height) ||
    image.width < 1 ||
    image.height < 1
  ) {
    throw new Error(`invalid image dimensions ${image.width}x${image.height}`);
  }
  if (!(image.data instanceof Uint8Array)) {
    throw new Error('image.data must be a Uint8Array');
  }
  const expected = image.width * image.height * 3;
  if (image.data.length !== expected) {
    throw new Error(
      `image buffer has ${image.data.length} bytes, expected ${expected} (h*w*3, contiguous RGB)`,
    );
  }
}

export function assertKind(kind: string): asserts kind is CorruptionKind {
  if (!(KINDS as readonly string[]).includes(kind)) {
    throw new Error(`unknown corruption kind '${kind}'; valid kinds: ${KINDS.join(', ')}`);
  }
}

export function assertSeverity(severity: number): asserts severity is Severity {
  if (!Number.isInteger(severity) || severity < 1 || severity > 4) {
    throw new Error(`severity must be an integer in [1, 4], got ${severity}`);
  }
}

export function assertSeed(seed: bigint | number): bigint {
  const value = typeof seed === 'bigint' ? seed : BigInt(seed);
  if (value < 0n || value >= 1n << 64n) {
    throw new Error(`seed must be a u64, got ${value}`);
  }
  return value;
}
