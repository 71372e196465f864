/**
 * Shared mock data and a tiny fetch router for the explorer tests.
 *
 * The fixture snapshot has eight leaf topics; the one the flow tests drive
 * (T3_4) exposes a schema subgraph of 6 predicates over 12 concepts and two
 * generated queries that cover only part of that subgraph, so highlight
 * assertions can distinguish "exactly the query's elements" from "everything".
 */

import { vi } from "vitest";
import type {
  ExecuteResponse,
  QueryRecord,
  TopicGraph,
  TopicSummary,
} from "../src/api.js";

export const EX = "http://example.org/vocab#";
const RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label";

export function conceptIri(i: number): string {
  return `${EX}Concept${i}`;
}

export function predicateIri(i: number): string {
  return `${EX}pred${i}`;
}

export const TOPICS: TopicSummary[] = Array.from({ length: 8 }, (_, i) => ({
  topicId: `T3_${i + 1}`,
  finalPosition: i + 1,
  overall: i + 1.5,
  meanSw: 0.9 - i * 0.05,
  predicateCount: 6,
  predicates: [
    { iri: predicateIri(1), label: "pred1", pio: 4 },
    { iri: predicateIri(2), label: "pred2", pio: 3 },
  ],
  concepts: [{ iri: conceptIri(1), label: "Concept1", degree: 5 }],
}));

export const TOPIC_GRAPH: TopicGraph = {
  topicId: "T3_4",
  nodes: [
    ...Array.from({ length: 12 }, (_, i) => ({
      id: conceptIri(i + 1),
      kind: "concept" as const,
      label: `Concept${i + 1}`,
    })),
    ...Array.from({ length: 6 }, (_, i) => ({
      id: predicateIri(i + 1),
      kind: "predicate" as const,
      label: `pred${i + 1}`,
    })),
  ],
  edges: Array.from({ length: 6 }, (_, i) => [
    { source: conceptIri(2 * i + 1), target: predicateIri(i + 1), count: 10 + i },
    { source: predicateIri(i + 1), target: conceptIri(2 * i + 2), count: 20 + i },
  ]).flat(),
};

export const QUERY_RECORDS: QueryRecord[] = [
  {
    topicId: "T3_4",
    nlQuestion: "For any Concept1, what are its pred1 and pred2?",
    sparql: [
      "select distinct ?concept1label, ?concept2label where {",
      `?concept1 <${RDF_TYPE}> <${conceptIri(1)}> .`,
      `?concept2 <${RDF_TYPE}> <${conceptIri(2)}> .`,
      `?concept1 <${predicateIri(1)}> ?concept2 .`,
      `?concept1 <${predicateIri(2)}> ?other .`,
      `?concept1 <${RDFS_LABEL}> ?concept1label .`,
      `?concept2 <${RDFS_LABEL}> ?concept2label .`,
      "}",
    ].join("\n"),
    beta: 0.2,
    shareTemplate: false,
  },
  {
    topicId: "T3_4",
    nlQuestion:
      "For any two concept5s which share the common concept6, what are all the possible combinations?",
    sparql: [
      "select distinct ?alabel where {",
      `?a <${RDF_TYPE}> <${conceptIri(5)}> .`,
      `?b <${RDF_TYPE}> <${conceptIri(6)}> .`,
      `?a <${predicateIri(3)}> ?b .`,
      `Optional { ?a2 <${predicateIri(3)}> ?b } .`,
      `?a <${RDFS_LABEL}> ?alabel .`,
      "}",
    ].join("\n"),
    beta: 0.2,
    shareTemplate: true,
  },
];

export const EXECUTE_RESULT: ExecuteResponse = {
  columns: ["s", "name"],
  rows: [
    [
      { kind: "iri", value: "http://x/a", datatype: null, language: null },
      { kind: "literal", value: "Alpha", datatype: null, language: "en" },
    ],
    [
      { kind: "iri", value: "http://x/b", datatype: null, language: null },
      { kind: "literal", value: "Beta", datatype: null, language: null },
    ],
    [{ kind: "iri", value: "http://x/c", datatype: null, language: null }, null],
  ],
};

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export type Route = (call: RecordedCall) => { status: number; data?: unknown; raw?: string };

export function jsonResponse(status: number, data?: unknown, raw?: string): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => {
      if (data === undefined) {
        throw new Error(raw ?? "no JSON body");
      }
      return data;
    },
  } as unknown as Response;
}

/**
 * Install a fetch mock routed by "METHOD path". Returns the list of recorded
 * calls so tests can assert what went over the wire.
 */
export function installFetch(routes: Record<string, Route>): RecordedCall[] {
  const calls: RecordedCall[] = [];
  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: string, init?: RequestInit) => {
      const method = init?.method ?? "GET";
      const call: RecordedCall = {
        url: String(input),
        method,
        body: init?.body ? JSON.parse(String(init.body)) : null,
      };
      calls.push(call);
      const route = routes[`${method} ${String(input)}`];
      if (!route) {
        throw new TypeError(`no mock route for ${method} ${String(input)}`);
      }
      const { status, data, raw } = route(call);
      return jsonResponse(status, data, raw);
    }),
  );
  return calls;
}

/** Happy-path routes for an 8-leaf snapshot centered on topic T3_4. */
export function standardRoutes(): Record<string, Route> {
  return {
    "GET /api/topics": () => ({ status: 200, data: TOPICS }),
    "GET /api/topics/T3_4/queries": () => ({ status: 200, data: QUERY_RECORDS }),
    "GET /api/topics/T3_4/graph": () => ({ status: 200, data: TOPIC_GRAPH }),
    "GET /api/topics/T3_1/queries": () => ({ status: 200, data: [] }),
    "GET /api/topics/T3_1/graph": () => ({
      status: 200,
      data: { topicId: "T3_1", nodes: [], edges: [] },
    }),
    "POST /api/execute": () => ({ status: 200, data: EXECUTE_RESULT }),
  };
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
