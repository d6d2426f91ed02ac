/**
 * Wire types for the annotation service's JSON API.
 *
 * These mirror the server payloads field for field; nothing here is
 * invented client-side except RatingDraft, which is the UI's local
 * (label, parameter) -> rating working state before submission.
 */

export interface SegmentRef {
  document: string;
  index: number;
}

export interface ParameterEntry {
  /** 1..10 */
  parameter: number;
  /** exact judging-guideline text, rendered verbatim */
  label: string;
}

export interface ScaleEntry {
  /** 1..5 */
  rating: number;
  /** exact scale text, rendered verbatim */
  label: string;
}

/** One annotation task: a segment with all system outputs under blind labels. */
export interface TaskPayload {
  task_id: string;
  segment_ref: SegmentRef;
  source: string | null;
  /** blind label ("A", "B", ...) -> candidate translation text */
  candidates: Record<string, string>;
  parameters: ParameterEntry[];
  scale: ScaleEntry[];
}

/** One rating POSTed to /api/ratings. */
export interface RatingSubmission {
  task_id: string;
  judge_id: string;
  /** blind system label as shown; the server unblinds */
  label: string;
  parameter: number;
  rating: number;
}

export interface SubmitAck {
  status: string;
  record: {
    judge_id: string;
    system_id: string;
    document: string;
    segment_index: number;
    parameter: number;
    rating: number;
  };
}

export interface JudgeProgress {
  completed: number;
  total: number;
  fraction: number;
}

export interface ProgressReport {
  total_tasks: number;
  judges: Record<string, JudgeProgress>;
}

/** Body of every 4xx response: which field failed and why. */
export interface ApiFailureBody {
  field: string;
  message: string;
}
