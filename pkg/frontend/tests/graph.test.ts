import { beforeEach, describe, expect, it } from "vitest";

import { renderTopicGraph } from "../src/graph.js";
import type { QueryElements } from "../src/sparql.js";
import { conceptIri, predicateIri, TOPIC_GRAPH } from "./fixtures.js";

function emptyHighlight(): QueryElements {
  return { predicates: new Set(), concepts: new Set() };
}

function highlightedIds(container: HTMLElement, kind: string): Set<string> {
  const out = new Set<string>();
  for (const el of container.querySelectorAll(`[data-kind="${kind}"]`)) {
    if ((el.getAttribute("class") ?? "").split(" ").includes("highlight")) {
      out.add(el.getAttribute("data-id")!);
    }
  }
  return out;
}

describe("topic graph rendering", () => {
  let container: HTMLElement;

  beforeEach(() => {
    container = document.createElement("div");
  });

  it("draws all 18 nodes of the 6-predicate, 12-concept fixture", () => {
    renderTopicGraph(container, TOPIC_GRAPH, emptyHighlight());
    expect(container.querySelectorAll("circle[data-kind=concept]").length).toBe(12);
    expect(container.querySelectorAll("polygon[data-kind=predicate]").length).toBe(6);
  });

  it("draws one arrowed line per edge", () => {
    renderTopicGraph(container, TOPIC_GRAPH, emptyHighlight());
    const lines = container.querySelectorAll("line");
    expect(lines.length).toBe(TOPIC_GRAPH.edges.length);
    for (const line of lines) {
      expect(line.getAttribute("marker-end")).toBe("url(#arrow)");
    }
  });

  it("labels every node", () => {
    renderTopicGraph(container, TOPIC_GRAPH, emptyHighlight());
    const labels = [...container.querySelectorAll("text")].map((t) => t.textContent);
    expect(labels).toContain("Concept7");
    expect(labels).toContain("pred6");
    expect(labels.length).toBe(18);
  });

  it("highlights exactly the given elements, keyed by kind", () => {
    const highlight: QueryElements = {
      predicates: new Set([predicateIri(1), predicateIri(2)]),
      concepts: new Set([conceptIri(1), conceptIri(2)]),
    };
    renderTopicGraph(container, TOPIC_GRAPH, highlight);
    expect(highlightedIds(container, "predicate")).toEqual(highlight.predicates);
    expect(highlightedIds(container, "concept")).toEqual(highlight.concepts);
  });

  it("does not highlight a concept listed as a predicate", () => {
    const highlight: QueryElements = {
      predicates: new Set([conceptIri(1)]),
      concepts: new Set(),
    };
    renderTopicGraph(container, TOPIC_GRAPH, highlight);
    expect(highlightedIds(container, "concept").size).toBe(0);
    expect(highlightedIds(container, "predicate").size).toBe(0);
  });

  it("renders no highlights for an empty query", () => {
    renderTopicGraph(container, TOPIC_GRAPH, emptyHighlight());
    expect(container.querySelectorAll(".highlight").length).toBe(0);
  });

  it("shows an empty state for a graph without nodes", () => {
    renderTopicGraph(container, { topicId: "T3_1", nodes: [], edges: [] }, emptyHighlight());
    expect(container.querySelector("svg")).toBeNull();
    expect(container.querySelector(".empty-state")?.textContent).toContain("no schema subgraph");
  });

  it("replaces previous content on re-render", () => {
    renderTopicGraph(container, TOPIC_GRAPH, emptyHighlight());
    renderTopicGraph(container, TOPIC_GRAPH, emptyHighlight());
    expect(container.querySelectorAll("svg").length).toBe(1);
  });
});
