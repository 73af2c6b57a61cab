/** Shared types mirroring the session API plus the pure view logic
 * (guards, labels, reordering). Everything here is DOM-free and
 * side-effect-free so the test suite can drive it directly. */

export type Phase = "setup" | "balloting" | "results" | "closed";
export type Method = "borda" | "condorcet";
export type RoleName = "facilitator" | "decision_maker";

export interface AlternativeView {
  id: string;
  label: string;
}

export interface CriterionView {
  id: string;
  name: string;
  weight: number;
  direction: "maximize" | "minimize";
  scale: string;
}

export interface ParticipantView {
  id: string;
  display_name: string;
  role: RoleName;
}

export interface PairwiseView {
  alternatives: string[];
  wins: number[][];
  voter_count: number;
}

export interface VoteResultView {
  method: Method;
  scores: Record<string, number>;
  ranking: string[];
  condorcet_winner: string | null;
  has_condorcet_winner: boolean;
  pairwise?: PairwiseView;
}

export interface SessionView {
  schema: number;
  id: string;
  phase: Phase;
  alternatives: AlternativeView[];
  criteria: CriterionView[] | null;
  matrix_values: number[][] | null;
  participants: ParticipantView[];
  ballot_count: number;
  results: Partial<Record<Method, VoteResultView>>;
  created_at: string;
  updated_at: string;
  submitted?: string[];
  ballots?: Record<string, string[]>;
  your_ballot?: string[];
}

export const PHASE_ORDER: Phase[] = ["setup", "balloting", "results", "closed"];

export function nextPhase(phase: Phase): Phase | null {
  const i = PHASE_ORDER.indexOf(phase);
  return i >= 0 && i + 1 < PHASE_ORDER.length ? PHASE_ORDER[i + 1] : null;
}

/** Mirror of the server's transition guard: one step forward only, and the
 * step into results needs at least one ballot. */
export function canAdvance(session: SessionView, to: Phase): boolean {
  if (nextPhase(session.phase) !== to) return false;
  if (to === "results" && session.ballot_count === 0) return false;
  return true;
}

/** Mirror of the server's ballot invariant: a strict permutation of the
 * session's alternative set. */
export function isPermutation(ranking: string[], alternatives: string[]): boolean {
  if (ranking.length !== alternatives.length) return false;
  const want = new Set(alternatives);
  const seen = new Set<string>();
  for (const id of ranking) {
    if (!want.has(id) || seen.has(id)) return false;
    seen.add(id);
  }
  return true;
}

/** What the ballot is missing or must drop, for the inline message. */
export function ballotProblems(ranking: string[], alternatives: string[]): string[] {
  const problems: string[] = [];
  const want = new Set(alternatives);
  const seen = new Set<string>();
  const repeated = new Set<string>();
  for (const id of ranking) {
    if (seen.has(id)) repeated.add(id);
    seen.add(id);
  }
  const missing = alternatives.filter((a) => !seen.has(a));
  const unknown = ranking.filter((a) => !want.has(a));
  if (missing.length) problems.push(`missing: ${missing.join(", ")}`);
  if (unknown.length) problems.push(`unknown: ${unknown.join(", ")}`);
  if (repeated.size) problems.push(`repeated: ${[...repeated].join(", ")}`);
  return problems;
}

/** Reorder for drag-and-drop: move the item at `from` so it lands at `to`. */
export function moveItem<T>(items: readonly T[], from: number, to: number): T[] {
  const result = items.slice();
  if (from < 0 || from >= result.length || to < 0 || to >= result.length) {
    return result;
  }
  const [moved] = result.splice(from, 1);
  result.splice(to, 0, moved);
  return result;
}

/** Scale raw slider values so the submitted weights sum to exactly 1. */
export function normalizeWeights(raw: Record<string, number>): Record<string, number> {
  const total = Object.values(raw).reduce((acc, v) => acc + v, 0);
  if (!(total > 0)) {
    throw new Error("weights must have a positive sum");
  }
  const out: Record<string, number> = {};
  for (const [key, value] of Object.entries(raw)) {
    out[key] = value / total;
  }
  return out;
}

const AREA_ID = /^ISA_(\d+)$/;

/** Classification-table label: ISA_6 -> "AIS 06"; anything else keeps its
 * own label (or id). */
export function displayLabel(alt: AlternativeView): string {
  const m = AREA_ID.exec(alt.id);
  if (m) return `AIS ${m[1].padStart(2, "0")}`;
  return alt.label || alt.id;
}

export interface ClassificationRow {
  label: string;
  place: string;
}

/** Top-N rows in the two-column classification layout. Refuses to render a
 * ranking that is not a permutation of the session alternatives: only
 * server-computed rankings are ever shown, so a mismatch is a bug. */
export function classificationRows(
  ranking: string[],
  alternatives: AlternativeView[],
  topN = 5,
): ClassificationRow[] {
  if (!isPermutation(ranking, alternatives.map((a) => a.id))) {
    throw new Error("ranking is not a permutation of the session alternatives");
  }
  const byId = new Map(alternatives.map((a) => [a.id, a]));
  return ranking.slice(0, topN).map((id, i) => ({
    label: displayLabel(byId.get(id)!),
    place: `${i + 1}°`,
  }));
}

/** Heat intensity for the pairwise matrix cell, in [0, 1]. */
export function heat(wins: number, voterCount: number): number {
  return voterCount > 0 ? wins / voterCount : 0;
}

export function parseAlternativesText(text: string): string[] {
  return text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
}
