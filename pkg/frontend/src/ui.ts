/**
 * DOM rendering for the explorer panels.
 *
 * Pure render functions: each one replaces the contents of a container from
 * the data it is given and wires the callbacks it is handed. No fetching.
 */

import type { QueryRecord, TopicSummary } from "./api.js";
import type { ResultState } from "./state.js";

export function renderTopicList(
  container: HTMLElement,
  topics: TopicSummary[],
  selectedId: string | null,
  onSelect: (topicId: string) => void,
): void {
  container.textContent = "";
  if (topics.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "This snapshot has no leaf topics.";
    container.appendChild(empty);
    return;
  }
  const list = document.createElement("ol");
  list.className = "topic-list";
  for (const topic of topics) {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.type = "button";
    button.className = "topic-row" + (topic.topicId === selectedId ? " selected" : "");
    button.dataset.topicId = topic.topicId;

    const title = document.createElement("span");
    title.className = "topic-title";
    title.textContent = `#${topic.finalPosition} ${topic.topicId}`;
    const detail = document.createElement("span");
    detail.className = "topic-detail";
    const names = topic.predicates.slice(0, 3).map((p) => p.label);
    detail.textContent =
      `${topic.predicateCount} predicates, mean sw ${topic.meanSw.toFixed(2)}` +
      (names.length ? ` (${names.join(", ")})` : "");

    button.appendChild(title);
    button.appendChild(detail);
    button.addEventListener("click", () => onSelect(topic.topicId));
    item.appendChild(button);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderQuestions(
  container: HTMLElement,
  questions: QueryRecord[],
  onAdd: (index: number) => void,
): void {
  container.textContent = "";
  if (questions.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No generated queries for this topic.";
    const disabled = document.createElement("button");
    disabled.type = "button";
    disabled.className = "add-question";
    disabled.disabled = true;
    disabled.textContent = "Add to editor";
    container.appendChild(empty);
    container.appendChild(disabled);
    return;
  }
  const list = document.createElement("ul");
  list.className = "question-list";
  questions.forEach((record, index) => {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.type = "button";
    button.className = "add-question";
    button.dataset.index = String(index);
    button.textContent =
      record.nlQuestion + (record.shareTemplate ? " [share]" : "") + ` (beta ${record.beta})`;
    button.addEventListener("click", () => onAdd(index));
    item.appendChild(button);
    list.appendChild(item);
  });
  container.appendChild(list);
}

function cellText(cell: { value: string; language: string | null } | null): string {
  if (cell === null) {
    return "";
  }
  return cell.language ? `${cell.value} (${cell.language})` : cell.value;
}

export function renderResults(container: HTMLElement, state: ResultState): void {
  container.textContent = "";
  if (state.kind === "idle") {
    const hint = document.createElement("p");
    hint.className = "empty-state";
    hint.textContent = "Run a query to see its bindings here.";
    container.appendChild(hint);
    return;
  }
  if (state.kind === "running") {
    const note = document.createElement("p");
    note.className = "running-state";
    note.textContent = "Running...";
    container.appendChild(note);
    return;
  }
  if (state.kind === "error") {
    const panel = document.createElement("div");
    panel.className = "error-panel";
    panel.textContent = `${state.code}: ${state.message}`;
    container.appendChild(panel);
    return;
  }
  if (state.rows.length === 0) {
    const none = document.createElement("p");
    none.className = "empty-state";
    none.textContent = "0 rows";
    container.appendChild(none);
    return;
  }
  const table = document.createElement("table");
  table.className = "bindings";
  const head = document.createElement("thead");
  const headRow = document.createElement("tr");
  for (const column of state.columns) {
    const th = document.createElement("th");
    th.textContent = column;
    headRow.appendChild(th);
  }
  head.appendChild(headRow);
  table.appendChild(head);
  const body = document.createElement("tbody");
  for (const row of state.rows) {
    const tr = document.createElement("tr");
    for (const cell of row) {
      const td = document.createElement("td");
      if (cell === null) {
        td.className = "unbound";
      }
      td.textContent = cellText(cell);
      tr.appendChild(td);
    }
    body.appendChild(tr);
  }
  table.appendChild(body);
  container.appendChild(table);
}

export function renderBanner(
  container: HTMLElement,
  message: string | null,
  onRetry: () => void,
): void {
  container.textContent = "";
  if (message === null) {
    return;
  }
  const banner = document.createElement("div");
  banner.className = "banner error";
  const text = document.createElement("span");
  text.textContent = message;
  const retry = document.createElement("button");
  retry.type = "button";
  retry.className = "retry";
  retry.textContent = "Retry";
  retry.addEventListener("click", onRetry);
  banner.appendChild(text);
  banner.appendChild(retry);
  container.appendChild(banner);
}
