/** Thin client over the session service; every mutation carries the last
 * revision token so concurrent edits surface as conflicts, never silent
 * overwrites. */

import { ConsistencyPayload, Judgment, ResultsPayload, SessionInfo } from "./types.js";

export class StaleRevisionError extends Error {
  constructor() {
    super("the session changed elsewhere; reload before editing");
  }
}

export class WorkflowOrderError extends Error {}

async function request<T>(
  method: string,
  url: string,
  body?: unknown
): Promise<T> {
  const res = await fetch(url, {
    method,
    headers: body === undefined ? {} : { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  if (res.status === 409) throw new StaleRevisionError();
  if (res.status === 422) {
    const detail = await res.json().catch(() => ({ detail: "workflow order" }));
    throw new WorkflowOrderError(String(detail.detail ?? "workflow order"));
  }
  if (!res.ok && res.status !== 202) {
    const detail = await res.json().catch(() => ({ detail: res.statusText }));
    throw new Error(String(detail.detail ?? res.statusText));
  }
  return (await res.json()) as T;
}

export async function createSession(matrixCsv: string): Promise<SessionInfo> {
  return request<SessionInfo>("POST", "/sessions", { matrix_csv: matrixCsv });
}

export async function runRefset(
  sid: string,
  revision: number,
  options: { coverage?: number; forbid?: string[]; add?: string[] } = {}
): Promise<{ feasible: boolean; reference?: string[]; revision: number }> {
  return request("POST", `/sessions/${sid}/refset`, { revision, ...options });
}

export async function submitComparisons(
  sid: string,
  revision: number,
  best: string,
  worst: string,
  bo: Record<string, Judgment>,
  ow: Record<string, Judgment>
): Promise<{ revision: number }> {
  return request("PUT", `/sessions/${sid}/comparisons`, {
    revision,
    best,
    worst,
    bo,
    ow,
  });
}

export async function fetchConsistency(
  sid: string
): Promise<ConsistencyPayload> {
  return request("GET", `/sessions/${sid}/consistency`);
}

export async function solve(
  sid: string,
  revision: number
): Promise<{ revision: number }> {
  return request("POST", `/sessions/${sid}/solve`, { revision });
}

export async function fetchResults(sid: string): Promise<ResultsPayload> {
  for (;;) {
    const res = await fetch(`/sessions/${sid}/results`);
    if (res.status === 202) {
      await new Promise((resolve) => setTimeout(resolve, 300));
      continue;
    }
    if (res.status === 422) {
      const detail = await res.json().catch(() => ({}));
      throw new WorkflowOrderError(String(detail.detail ?? "solve first"));
    }
    if (!res.ok) throw new Error(res.statusText);
    return (await res.json()) as ResultsPayload;
  }
}
