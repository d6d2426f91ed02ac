/**
 * Shared test fixtures: the canonical judging texts and payload builders.
 *
 * GOLDEN_PARAMETERS and GOLDEN_SCALE are the authoritative wordings the
 * rating guidelines define, copied here character for character.  The
 * golden tests compare rendered output and live server payloads against
 * these constants byte for byte; any drift — a reworded parameter, a
 * swapped dash, a missing period — is a test failure, not a style choice.
 */

import type { ParameterEntry, ScaleEntry, TaskPayload } from "../src/types.js";

export const GOLDEN_PARAMETERS: ReadonlyArray<ParameterEntry> = [
  { parameter: 1, label: "Translation of Gender and Number of the Noun/s." },
  { parameter: 2, label: "Translation of tense in the source sentence." },
  { parameter: 3, label: "Translation of Voice in the source sentence." },
  { parameter: 4, label: "Identification of the Proper Nouns." },
  {
    parameter: 5,
    label:
      "Use of Adjectives and Adverbs corresponding to the nouns and verbs in the source sentence.",
  },
  { parameter: 6, label: "Selection of proper words / synonyms." },
  { parameter: 7, label: "The sequence of Noun, Helping Verb and Verb in the translation." },
  { parameter: 8, label: "Use of Punctuation signs in the translation." },
  {
    parameter: 9,
    label:
      "Maintaining the stress on the significant part in the source sentence in the translation.",
  },
  { parameter: 10, label: "Maintaining the semantics of the source sentence in the translation." },
];

export const GOLDEN_SCALE: ReadonlyArray<ScaleEntry> = [
  { rating: 1, label: "Unacceptable" },
  { rating: 2, label: "Barely Understandable" },
  { rating: 3, label: "Understandable" },
  { rating: 4, label: "Good" },
  { rating: 5, label: "Excellent" },
];

export const ALL_PARAMETERS: ReadonlyArray<number> = GOLDEN_PARAMETERS.map(
  (entry) => entry.parameter,
);

/** A realistic two-system task payload, as the service would serve it. */
export function makeTask(overrides: Partial<TaskPayload> = {}): TaskPayload {
  return {
    task_id: "doc1:0",
    segment_ref: { document: "doc1", index: 0 },
    source: "मंत्री ने बैठक में नई शिक्षा नीति की घोषणा की",
    candidates: {
      A: "the minister announced a new education policy at the meeting",
      B: "minister announce new education policy meeting",
    },
    parameters: [...GOLDEN_PARAMETERS],
    scale: [...GOLDEN_SCALE],
    ...overrides,
  };
}

/** JSON Response helper for mock fetch implementations. */
export function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
