/**
 * HTML rendering for the annotation page, as pure string builders.
 *
 * Two hard rules govern everything here:
 *
 * 1. Candidates appear only under their blind labels ("System A", ...).
 *    True system identities never reach this module, so they cannot leak.
 * 2. Scale and parameter texts from the task payload are rendered
 *    verbatim, character for character — judges must read exactly the
 *    wording the guidelines define, not a paraphrase of it.
 */

import type { ScaleEntry, TaskPayload } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** "3 — Understandable": the number and the exact scale wording. */
export function scaleOptionText(entry: ScaleEntry): string {
  return `${entry.rating} — ${entry.label}`;
}

export function blindLabelHeading(label: string): string {
  return `System ${label}`;
}

export type DraftLookup = (label: string, parameter: number) => number | null;

/** The rating controls for one (system label, parameter) pair. */
function renderScaleControl(
  task: TaskPayload,
  label: string,
  parameter: number,
  draft: number | null,
): string {
  const name = `rating-${escapeHtml(label)}-${parameter}`;
  const options = task.scale
    .map((entry) => {
      const checked = draft === entry.rating ? " checked" : "";
      return (
        `<label class="scale-option">` +
        `<input type="radio" name="${name}" value="${entry.rating}"` +
        ` data-label="${escapeHtml(label)}" data-parameter="${parameter}"${checked}>` +
        `<span>${escapeHtml(scaleOptionText(entry))}</span>` +
        `</label>`
      );
    })
    .join("\n");
  return `<div class="scale" role="radiogroup">\n${options}\n</div>`;
}

/** One candidate's card: blind heading, its text, all ten parameter rows. */
function renderCandidate(task: TaskPayload, label: string, drafts: DraftLookup): string {
  const text = task.candidates[label] ?? "";
  const rows = task.parameters
    .map((entry) => {
      const draft = drafts(label, entry.parameter);
      return (
        `<fieldset class="parameter" data-label="${escapeHtml(label)}"` +
        ` data-parameter="${entry.parameter}">\n` +
        `<legend><span class="parameter-number">${entry.parameter}.</span> ` +
        `<span class="parameter-text">${escapeHtml(entry.label)}</span></legend>\n` +
        renderScaleControl(task, label, entry.parameter, draft) +
        `\n</fieldset>`
      );
    })
    .join("\n");
  return (
    `<section class="candidate" data-label="${escapeHtml(label)}">\n` +
    `<h2>${escapeHtml(blindLabelHeading(label))}</h2>\n` +
    `<p class="candidate-text">${escapeHtml(text)}</p>\n` +
    `${rows}\n` +
    `</section>`
  );
}

/** The whole task view; submit stays disabled until every control is rated. */
export function renderTask(task: TaskPayload, drafts: DraftLookup, canSubmit: boolean): string {
  const labels = Object.keys(task.candidates).sort();
  const source =
    task.source === null
      ? ""
      : `<section class="source"><h2>Source</h2>` +
        `<p class="source-text">${escapeHtml(task.source)}</p></section>\n`;
  const candidates = labels.map((label) => renderCandidate(task, label, drafts)).join("\n");
  const disabled = canSubmit ? "" : " disabled";
  return (
    `<article class="task" data-task-id="${escapeHtml(task.task_id)}">\n` +
    `<header><h1>Sentence ${task.segment_ref.index + 1} · ` +
    `${escapeHtml(task.segment_ref.document)}</h1>\n` +
    `<p class="hint">Rate every parameter for every system. ` +
    `Keys 1–5 set the focused row and move on.</p></header>\n` +
    source +
    candidates +
    `\n<footer><button id="submit" type="button"${disabled}>Submit ratings</button></footer>\n` +
    `</article>`
  );
}

/** Shown when the queue of tasks for this judge is empty. */
export function renderCompletion(judgeId: string): string {
  return (
    `<article class="done">\n` +
    `<h1>All done</h1>\n` +
    `<p>Every sentence assigned to <strong>${escapeHtml(judgeId)}</strong> has been rated. ` +
    `Thank you.</p>\n` +
    `</article>`
  );
}

/** Shown while ratings wait for the server to come back. */
export function renderRetryBanner(pending: number): string {
  const noun = pending === 1 ? "rating" : "ratings";
  return (
    `<div class="retry-banner" role="alert">` +
    `Connection trouble: ${pending} ${noun} not yet saved. ` +
    `Your picks are kept locally; <button id="retry" type="button">retry now</button>.` +
    `</div>`
  );
}

/** Shown when the judge id is missing from the page URL. */
export function renderJudgePrompt(): string {
  return (
    `<article class="judge-prompt">\n` +
    `<h1>Who is judging?</h1>\n` +
    `<form id="judge-form">` +
    `<label>Judge id <input id="judge-input" name="judge" autocomplete="off"></label> ` +
    `<button type="submit">Start</button>` +
    `</form>\n` +
    `</article>`
  );
}
