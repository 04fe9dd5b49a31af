/** Service-payload fixtures for the published five-country scenario. */

import { ConsistencyPayload, ResultsPayload } from "../src/types.js";

export const REFERENCE = ["Estonia", "Hungary", "Latvia", "Greece", "Moldova"];

function zeros(): number[][] {
  return REFERENCE.map(() => REFERENCE.map(() => 0));
}

/** First-round judgments: one ordinal reversal between Latvia and Greece. */
export function table1Consistency(): ConsistencyPayload {
  const violations = zeros();
  violations[2][3] = 1;
  violations[3][2] = 1;
  return {
    revision: 3,
    reference: [...REFERENCE],
    or: 0.2,
    or_by_alt: [0, 0, 0.2, 0.2, 0],
    violations,
    cr: 12 / 56,
    cr_by_alt: [0, 7 / 56, 4 / 56, 12 / 56, 0],
    threshold: 0.284,
    or_verdict: "fail",
    cr_verdict: "pass",
    threshold_known: true,
    revision_ranges: [
      { vector: "bo", id: "Estonia", current: 1, interval: [1, 1] },
      { vector: "bo", id: "Hungary", current: 3, interval: [1.0001, 3.9999] },
      { vector: "bo", id: "Latvia", current: 4, interval: [5.0001, 7.968] },
      { vector: "bo", id: "Greece", current: 5, interval: [3.0001, 3.9999] },
      { vector: "bo", id: "Moldova", current: 8, interval: [7.2255, 9] },
      { vector: "ow", id: "Estonia", current: 8, interval: [5.0001, 9] },
      { vector: "ow", id: "Hungary", current: 5, interval: [4.0001, 7.968] },
      { vector: "ow", id: "Latvia", current: 3, interval: [4.0001, 4.9999] },
      { vector: "ow", id: "Greece", current: 4, interval: [1.0001, 2.9999] },
      { vector: "ow", id: "Moldova", current: 1, interval: [1, 1] },
    ],
  };
}

/** Revised judgments: fully consistent ordinally, cardinal ratio 7/56. */
export function table4Consistency(): ConsistencyPayload {
  return {
    revision: 4,
    reference: [...REFERENCE],
    or: 0,
    or_by_alt: [0, 0, 0, 0, 0],
    violations: zeros(),
    cr: 0.125,
    cr_by_alt: [0, 0.125, 4 / 56, 4 / 56, 0],
    threshold: 0.284,
    or_verdict: "pass",
    cr_verdict: "pass",
    threshold_known: true,
    revision_ranges: [],
  };
}

export function resultsPayload(): ResultsPayload {
  return {
    revision: 5,
    kind: "bwd",
    xi_star: 0.030689,
    values: {
      Estonia: 0.7421,
      Hungary: 0.5712,
      Latvia: 0.430021,
      Greece: 0.41977,
      Moldova: 0.1153,
    },
    ranking: [["Estonia"], ["Hungary"], ["Latvia"], ["Greece"], ["Moldova"]],
    rank_ranges: [
      { id: "Estonia", best_rank: 1, worst_rank: 1 },
      { id: "Hungary", best_rank: 2, worst_rank: 2 },
      { id: "Latvia", best_rank: 3, worst_rank: 4 },
      { id: "Greece", best_rank: 3, worst_rank: 4 },
      { id: "Moldova", best_rank: 5, worst_rank: 5 },
    ],
    U: 0.1,
    necessary: [
      [0, 1],
      [0, 2],
      [0, 3],
      [0, 4],
      [1, 2],
      [1, 3],
      [1, 4],
      [2, 4],
      [3, 4],
    ],
    hasse: [
      ["Estonia", "Hungary"],
      ["Hungary", "Latvia"],
      ["Hungary", "Greece"],
      ["Latvia", "Moldova"],
      ["Greece", "Moldova"],
    ],
    ids: ["Estonia", "Hungary", "Latvia", "Greece", "Moldova"],
  };
}
