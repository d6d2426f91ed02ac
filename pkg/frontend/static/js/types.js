/**
 * Wire types for the annotation service's JSON API.
 *
 * These mirror the server payloads field for field; nothing here is
 * invented client-side except RatingDraft, which is the UI's local
 * (label, parameter) -> rating working state before submission.
 */
export {};
