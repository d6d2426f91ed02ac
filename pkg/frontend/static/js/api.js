/**
 * Thin typed client over the annotation service's HTTP/JSON API.
 *
 * Server rejections (4xx with a {field, message} body) raise ApiError so
 * callers can tell a validation problem from a connectivity problem:
 * ApiError means the server answered and said no — retrying the same
 * payload cannot help; any other rejection (network refusal, timeout)
 * propagates as-is and is fair game for a retry.
 */
export class ApiError extends Error {
    status;
    field;
    constructor(status, field, message) {
        super(`${field}: ${message}`);
        this.name = "ApiError";
        this.status = status;
        this.field = field;
    }
}
export class ApiClient {
    baseUrl;
    fetchImpl;
    constructor(baseUrl = "", fetchImpl = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl.replace(/\/$/, "");
        this.fetchImpl = fetchImpl;
    }
    /** Next unfinished task for the judge, or null when everything is rated. */
    async nextTask(judgeId) {
        const response = await this.fetchImpl(`${this.baseUrl}/api/tasks/next?judge=${encodeURIComponent(judgeId)}`);
        if (response.status === 204) {
            return null;
        }
        if (!response.ok) {
            throw await toApiError(response);
        }
        return (await response.json());
    }
    /** Submit one rating; resolves with the server's acknowledgment. */
    async submitRating(submission) {
        const response = await this.fetchImpl(`${this.baseUrl}/api/ratings`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(submission),
        });
        if (!response.ok) {
            throw await toApiError(response);
        }
        return (await response.json());
    }
    async progress() {
        const response = await this.fetchImpl(`${this.baseUrl}/api/progress`);
        if (!response.ok) {
            throw await toApiError(response);
        }
        return (await response.json());
    }
    /** The full ratings log as CSV text, exactly as the correlation tooling reads it. */
    async exportCsv() {
        const response = await this.fetchImpl(`${this.baseUrl}/api/export`);
        if (!response.ok) {
            throw await toApiError(response);
        }
        return response.text();
    }
}
async function toApiError(response) {
    let field = "response";
    let message = `unexpected status ${response.status}`;
    try {
        const body = (await response.json());
        if (typeof body.field === "string" && typeof body.message === "string") {
            field = body.field;
            message = body.message;
        }
    }
    catch {
        // non-JSON error body; keep the generic message
    }
    return new ApiError(response.status, field, message);
}
