/** Wire types mirroring the service's JSON bodies. */

export const PHASES = [
  "Agents",
  "States",
  "Actions",
  "Transitions",
  "Review",
  "Formula",
  "Done",
] as const;

export type Phase = (typeof PHASES)[number];

export type StepKind =
  | "agents"
  | "states"
  | "actions"
  | "transitions"
  | "review"
  | "formula";

/** Phase a step kind is submitted in (its success moves the session past it). */
export const STEP_PHASE: Record<StepKind, Phase> = {
  agents: "Agents",
  states: "States",
  actions: "Actions",
  transitions: "Transitions",
  review: "Review",
  formula: "Formula",
};

export interface TransitionRow {
  state: string;
  actions: string[];
  target: string;
}

export interface SessionDraft {
  agents: string[];
  states: string[];
  initial: string[];
  atoms: string[];
  labels: Record<string, string[]>;
  actions: Record<string, string[]>;
  rows: TransitionRow[];
}

export interface StepRecord {
  kind: string;
  payload: unknown;
}

export interface SessionView {
  id: string;
  phase: Phase;
  draft: SessionDraft;
  steps: StepRecord[];
  last_result: VerificationResult | null;
  created: number;
  updated: number;
}

export interface SelectionTrace {
  model_class: string;
  logic_class: string;
  state_count: number;
  preferred_method: string;
  used_method: string;
  fallback_applied: boolean;
  note: string;
}

export interface Witness {
  coalition: string[];
  choice: Record<string, Record<string, string>>;
}

export interface VerificationResult {
  overall: boolean;
  per_initial: Record<string, boolean>;
  satisfying_states: string[];
  method: string;
  trace: SelectionTrace;
  witness: Witness | null;
  elapsed_seconds: number;
}

export interface ParseCheck {
  ok: boolean;
  logic: string;
}

export interface Violation {
  invariant: string;
  subject: string;
  message: string;
  line: number | null;
}

export interface MissingVector {
  state: string;
  actions: string[];
}

/** Flat error body every non-2xx response carries. */
export interface ErrorBody {
  code: string;
  message: string;
  line?: number;
  column?: number;
  expected?: string[];
  violations?: Violation[];
  missing_vectors?: MissingVector[];
}

export interface RegistryInfo {
  model_classes: { id: string; branch: string }[];
  logic_classes: { id: string; branch: string }[];
  checkers: {
    id: string;
    model_class: string;
    logic_class: string;
    method: string;
  }[];
}
