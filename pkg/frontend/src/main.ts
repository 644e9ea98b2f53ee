import { App } from "./app.js";
import { renderResults } from "./view.js";

const baseUrl = (window as { SCIQA_BASE_URL?: string }).SCIQA_BASE_URL ?? "";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const queryInput = el<HTMLInputElement>("query");
const retrieverInput = el<HTMLInputElement>("retriever-top-k");
const readerInput = el<HTMLInputElement>("reader-top-k");
const controlError = el<HTMLElement>("control-error");
const banner = el<HTMLElement>("error-banner");
const resultsPane = el<HTMLElement>("results");
const status = el<HTMLElement>("status");

const app = new App(baseUrl, (url, init) => fetch(url, init), (state) => {
  status.textContent = state.loading ? "searching..." : "";
  banner.textContent = state.error ?? "";
  banner.hidden = !state.error;
  if (state.results !== null) {
    resultsPane.innerHTML = renderResults(state.results, baseUrl);
  }
});

retrieverInput.value = String(app.state.retrieverTopK);
readerInput.value = String(app.state.readerTopK);

el<HTMLFormElement>("query-form").addEventListener("submit", (event) => {
  event.preventDefault();
  void app.submitQuery(queryInput.value);
});

retrieverInput.addEventListener("change", () => {
  controlError.textContent = app.setRetrieverTopK(retrieverInput.value) ?? "";
});

readerInput.addEventListener("change", () => {
  controlError.textContent = app.setReaderTopK(readerInput.value) ?? "";
});
