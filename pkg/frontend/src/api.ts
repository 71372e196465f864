/**
 * Typed client for the snapshot HTTP API.
 *
 * Every datum the explorer shows comes through these calls; the client does
 * no analysis of its own. All payloads use camelCase keys.
 */

export interface RankedPredicate {
  iri: string;
  label: string;
  pio: number;
}

export interface RankedConcept {
  iri: string;
  label: string;
  degree: number;
}

export interface TopicSummary {
  topicId: string;
  finalPosition: number;
  overall: number;
  meanSw: number;
  predicateCount: number;
  predicates: RankedPredicate[];
  concepts: RankedConcept[];
}

export interface GraphNode {
  id: string;
  kind: "concept" | "predicate";
  label: string;
}

export interface GraphEdge {
  source: string;
  target: string;
  count: number;
}

export interface TopicGraph {
  topicId: string;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface QueryRecord {
  topicId: string;
  nlQuestion: string;
  sparql: string;
  beta: number;
  shareTemplate: boolean;
}

export interface Cell {
  kind: string;
  value: string;
  datatype: string | null;
  language: string | null;
}

export interface ExecuteResponse {
  columns: string[];
  rows: (Cell | null)[][];
}

export interface ExecuteRequest {
  sparql: string;
  endpointUrl?: string;
  defaultGraph?: string;
}

/** Error carrying the server's {code, message} body, or a synthetic code. */
export class ApiError extends Error {
  code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(path, init);
  } catch (err) {
    throw new ApiError("unreachable", `cannot reach the service: ${String(err)}`);
  }
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    body = null;
  }
  if (!response.ok) {
    const detail = body as { code?: string; message?: string } | null;
    throw new ApiError(
      detail?.code ?? `http_${response.status}`,
      detail?.message ?? `request failed with HTTP ${response.status}`,
    );
  }
  if (body === null) {
    throw new ApiError("bad_payload", `no JSON body from ${path}`);
  }
  return body as T;
}

export async function loadTopics(): Promise<TopicSummary[]> {
  const topics = await request<TopicSummary[]>("/api/topics");
  if (!Array.isArray(topics) || topics.some((t) => typeof t?.topicId !== "string")) {
    throw new ApiError("bad_payload", "topic list payload is not a list of topics");
  }
  return topics;
}

export function loadTopicGraph(topicId: string): Promise<TopicGraph> {
  return request<TopicGraph>(`/api/topics/${encodeURIComponent(topicId)}/graph`);
}

export async function loadTopicQueries(topicId: string): Promise<QueryRecord[]> {
  const queries = await request<QueryRecord[]>(
    `/api/topics/${encodeURIComponent(topicId)}/queries`,
  );
  if (!Array.isArray(queries)) {
    throw new ApiError("bad_payload", "query list payload is not a list");
  }
  return queries;
}

export function executeQuery(body: ExecuteRequest): Promise<ExecuteResponse> {
  return request<ExecuteResponse>("/api/execute", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
}
