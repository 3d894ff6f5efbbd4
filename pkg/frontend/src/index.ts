export { corrupt, kinds, sampleDecision, schedule } from './bindings.js';
export { decodePng, encodePng } from './png.js';
export { cliCommand } from './cli.js';
export type {
  AugmentPolicy,
  BoundImage,
  CorruptionKind,
  ParamRow,
  PlanDecision,
  Severity,
} from './types.js';
