import { documentUrl } from "./api.js";
import { confidencePercent } from "./format.js";
import { highlight } from "./highlight.js";
import { ResultRow, ResultViewModel } from "./types.js";

export function buildViewModel(row: ResultRow, baseUrl: string): ResultViewModel {
  const title = typeof row.meta?.name === "string" ? (row.meta.name as string) : "(untitled)";
  return {
    row,
    title,
    confidence: confidencePercent(row.score),
    highlight: highlight(row.context, row.offsets_in_context),
    documentUrl: documentUrl(baseUrl, row.doc_id),
  };
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderCard(vm: ResultViewModel): string {
  if (vm.row.type === "no_answer") {
    return `<article class="card no-answer">no answer found</article>`;
  }
  const badge = vm.highlight.valid ? "" : `<span class="badge-integrity">offsets unusable</span>`;
  const context = vm.highlight.valid
    ? `${escapeHtml(vm.highlight.before)}<mark>${escapeHtml(vm.highlight.answer)}</mark>${escapeHtml(vm.highlight.after)}`
    : escapeHtml(vm.row.context);
  return [
    `<article class="card">`,
    `<h3 class="answer">${escapeHtml(vm.row.answer)}</h3>`,
    `<p class="confidence">${vm.confidence}</p>`,
    `<p class="title"><a href="${vm.documentUrl}">${escapeHtml(vm.title)}</a></p>`,
    badge,
    `<p class="context">${context}</p>`,
    `</article>`,
  ].join("");
}

/** Cards render in response order; the UI never reorders results. */
export function renderResults(rows: ResultRow[], baseUrl: string): string {
  if (rows.length === 0) {
    return `<article class="card no-answer">no answer found</article>`;
  }
  return rows.map((row) => renderCard(buildViewModel(row, baseUrl))).join("\n");
}
