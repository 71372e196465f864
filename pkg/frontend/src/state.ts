/**
 * Workspace state and the rules for mutating it.
 *
 * Kept free of DOM code so the rules (editor preserved across topic
 * switches, stale execution results discarded) are testable on their own.
 */

import type { Cell, QueryRecord, TopicSummary } from "./api.js";

export type ResultState =
  | { kind: "idle" }
  | { kind: "running" }
  | { kind: "table"; columns: string[]; rows: (Cell | null)[][] }
  | { kind: "error"; code: string; message: string };

export interface Workspace {
  topics: TopicSummary[];
  selectedTopicId: string | null;
  questions: QueryRecord[];
  editorText: string;
  endpointUrl: string;
  lastResult: ResultState;
  runToken: number;
}

export function createWorkspace(): Workspace {
  return {
    topics: [],
    selectedTopicId: null,
    questions: [],
    editorText: "",
    endpointUrl: "",
    lastResult: { kind: "idle" },
    runToken: 0,
  };
}

/** Switching topics replaces the question list but leaves the editor alone. */
export function selectTopic(ws: Workspace, topicId: string, questions: QueryRecord[]): void {
  ws.selectedTopicId = topicId;
  ws.questions = questions;
}

/** Copy a generated question's SPARQL into the editor ("add query"). */
export function adoptQuestion(ws: Workspace, index: number): QueryRecord {
  const record = ws.questions[index];
  if (!record) {
    throw new Error(`no question at index ${index}`);
  }
  ws.editorText = record.sparql;
  return record;
}

/**
 * Mark a new execution as in flight. At most one run is current; the token
 * lets a finished request detect that a newer one superseded it.
 */
export function beginRun(ws: Workspace): number {
  ws.runToken += 1;
  ws.lastResult = { kind: "running" };
  return ws.runToken;
}

/** Apply a finished execution unless a newer run started in the meantime. */
export function finishRun(ws: Workspace, token: number, result: ResultState): boolean {
  if (token !== ws.runToken) {
    return false;
  }
  ws.lastResult = result;
  return true;
}
