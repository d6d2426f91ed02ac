/**
 * Thin typed client over the annotation service's HTTP/JSON API.
 *
 * Server rejections (4xx with a {field, message} body) raise ApiError so
 * callers can tell a validation problem from a connectivity problem:
 * ApiError means the server answered and said no — retrying the same
 * payload cannot help; any other rejection (network refusal, timeout)
 * propagates as-is and is fair game for a retry.
 */

import type {
  ApiFailureBody,
  ProgressReport,
  RatingSubmission,
  SubmitAck,
  TaskPayload,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly field: string;

  constructor(status: number, field: string, message: string) {
    super(`${field}: ${message}`);
    this.name = "ApiError";
    this.status = status;
    this.field = field;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl: FetchLike = (input, init) => fetch(input, init)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  /** Next unfinished task for the judge, or null when everything is rated. */
  async nextTask(judgeId: string): Promise<TaskPayload | null> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/api/tasks/next?judge=${encodeURIComponent(judgeId)}`,
    );
    if (response.status === 204) {
      return null;
    }
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as TaskPayload;
  }

  /** Submit one rating; resolves with the server's acknowledgment. */
  async submitRating(submission: RatingSubmission): Promise<SubmitAck> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/ratings`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(submission),
    });
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as SubmitAck;
  }

  async progress(): Promise<ProgressReport> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/progress`);
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as ProgressReport;
  }

  /** The full ratings log as CSV text, exactly as the correlation tooling reads it. */
  async exportCsv(): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/export`);
    if (!response.ok) {
      throw await toApiError(response);
    }
    return response.text();
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let field = "response";
  let message = `unexpected status ${response.status}`;
  try {
    const body = (await response.json()) as ApiFailureBody;
    if (typeof body.field === "string" && typeof body.message === "string") {
      field = body.field;
      message = body.message;
    }
  } catch {
    // non-JSON error body; keep the generic message
  }
  return new ApiError(response.status, field, message);
}
