/** Payload shapes mirrored from the session service. */

export type Judgment = number | [number, number];

export interface ConsistencyPayload {
  revision: number;
  reference: string[];
  or: number;
  or_by_alt: number[];
  violations: number[][];
  cr: number;
  cr_by_alt: number[];
  threshold: number | null;
  or_verdict: "pass" | "fail" | "unknown-threshold";
  cr_verdict: "pass" | "fail" | "unknown-threshold";
  threshold_known: boolean;
  revision_ranges: RevisionRangePayload[];
}

export interface RevisionRangePayload {
  vector: "bo" | "ow";
  id: string;
  current: number;
  interval: [number, number] | null;
}

export interface RankRangePayload {
  id: string;
  best_rank: number;
  worst_rank: number;
}

export interface ResultsPayload {
  revision: number;
  kind: "bwd" | "ibwd";
  xi_star: number;
  values: Record<string, number>;
  ranking: string[][];
  rank_ranges: RankRangePayload[];
  U: number;
  necessary: [number, number][];
  hasse: [string, string][];
  ids: string[];
}

export interface SessionInfo {
  id: string;
  revision: number;
}

/** Client-side view state; pending edits never touch the server until the
 * wizard submits them. */
export interface UiSessionView {
  session: SessionInfo | null;
  reference: string[];
  best: string | null;
  worst: string | null;
  pendingBo: Map<string, PendingJudgment>;
  pendingOw: Map<string, PendingJudgment>;
  consistency: ConsistencyPayload | null;
  results: ResultsPayload | null;
}

export interface PendingJudgment {
  lo: string; // raw input text; validated on collect
  hi: string; // equals lo for real-valued entries
  interval: boolean;
}

export function emptyView(): UiSessionView {
  return {
    session: null,
    reference: [],
    best: null,
    worst: null,
    pendingBo: new Map(),
    pendingOw: new Map(),
    consistency: null,
    results: null,
  };
}
