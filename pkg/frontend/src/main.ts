/**
 * Explorer entry point: builds the page skeleton, loads topics from the
 * API, and wires the browse / edit / run / highlight loop together.
 */

import {
  ApiError,
  executeQuery,
  loadTopicGraph,
  loadTopicQueries,
  loadTopics,
  type ExecuteRequest,
  type TopicGraph,
} from "./api.js";
import { renderTopicGraph } from "./graph.js";
import { isRunnable, queryElements } from "./sparql.js";
import {
  adoptQuestion,
  beginRun,
  createWorkspace,
  finishRun,
  selectTopic,
  type ResultState,
} from "./state.js";
import { renderBanner, renderQuestions, renderResults, renderTopicList } from "./ui.js";

const SKELETON = `
  <div id="banner"></div>
  <header class="masthead">
    <h1>ontotopics explorer</h1>
    <p>Browse discovered topics, refine their generated queries, and run them.</p>
  </header>
  <div class="layout">
    <aside class="sidebar">
      <section id="topic-panel">
        <h2>Topics</h2>
        <div id="topic-list"></div>
      </section>
      <section id="question-panel">
        <h2>Generated questions</h2>
        <div id="question-list"></div>
      </section>
    </aside>
    <main class="workspace">
      <section id="editor-panel">
        <h2>Query editor</h2>
        <input id="endpoint-input" type="text" placeholder="SPARQL endpoint URL (optional, server default otherwise)" />
        <textarea id="sparql-editor" rows="10" spellcheck="false" placeholder="Pick a generated question or write a select query."></textarea>
        <button id="run-button" type="button" disabled>Run</button>
      </section>
      <section id="results-panel">
        <h2>Results</h2>
        <div id="results"></div>
      </section>
      <section id="graph-panel">
        <h2>Topic graph</h2>
        <div id="graph"></div>
      </section>
    </main>
  </div>
`;

export async function init(root: HTMLElement): Promise<void> {
  root.innerHTML = SKELETON;
  const bannerEl = root.querySelector<HTMLElement>("#banner")!;
  const topicListEl = root.querySelector<HTMLElement>("#topic-list")!;
  const questionListEl = root.querySelector<HTMLElement>("#question-list")!;
  const editorEl = root.querySelector<HTMLTextAreaElement>("#sparql-editor")!;
  const endpointEl = root.querySelector<HTMLInputElement>("#endpoint-input")!;
  const runButton = root.querySelector<HTMLButtonElement>("#run-button")!;
  const resultsEl = root.querySelector<HTMLElement>("#results")!;
  const graphEl = root.querySelector<HTMLElement>("#graph")!;

  const ws = createWorkspace();
  let currentGraph: TopicGraph | null = null;

  const redrawTopics = () =>
    renderTopicList(topicListEl, ws.topics, ws.selectedTopicId, (id) => void choose(id));

  const redrawGraph = () => {
    if (currentGraph !== null) {
      renderTopicGraph(graphEl, currentGraph, queryElements(editorEl.value));
    }
  };

  const syncRunButton = () => {
    runButton.disabled = !isRunnable(editorEl.value);
  };

  async function refreshTopics(): Promise<void> {
    renderBanner(bannerEl, null, () => {});
    try {
      ws.topics = await loadTopics();
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      renderBanner(bannerEl, `Could not load topics: ${message}`, () => void refreshTopics());
      return;
    }
    redrawTopics();
  }

  async function choose(topicId: string): Promise<void> {
    renderBanner(bannerEl, null, () => {});
    try {
      const [queries, graph] = await Promise.all([
        loadTopicQueries(topicId),
        loadTopicGraph(topicId),
      ]);
      selectTopic(ws, topicId, queries);
      currentGraph = graph;
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      renderBanner(bannerEl, `Could not load topic ${topicId}: ${message}`, () =>
        void choose(topicId),
      );
      return;
    }
    redrawTopics();
    renderQuestions(questionListEl, ws.questions, (index) => {
      adoptQuestion(ws, index);
      editorEl.value = ws.editorText;
      syncRunButton();
      redrawGraph();
    });
    redrawGraph();
  }

  async function run(): Promise<void> {
    if (!isRunnable(editorEl.value)) {
      return;
    }
    ws.editorText = editorEl.value;
    ws.endpointUrl = endpointEl.value.trim();
    const token = beginRun(ws);
    renderResults(resultsEl, ws.lastResult);
    redrawGraph();
    const body: ExecuteRequest = { sparql: ws.editorText };
    if (ws.endpointUrl) {
      body.endpointUrl = ws.endpointUrl;
    }
    let outcome: ResultState;
    try {
      const response = await executeQuery(body);
      outcome = { kind: "table", columns: response.columns, rows: response.rows };
    } catch (err) {
      outcome =
        err instanceof ApiError
          ? { kind: "error", code: err.code, message: err.message }
          : { kind: "error", code: "unexpected", message: String(err) };
    }
    if (finishRun(ws, token, outcome)) {
      renderResults(resultsEl, ws.lastResult);
    }
  }

  editorEl.addEventListener("input", syncRunButton);
  runButton.addEventListener("click", () => void run());
  renderResults(resultsEl, ws.lastResult);
  await refreshTopics();
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root !== null) {
    void init(root);
  }
}
