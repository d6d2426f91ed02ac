/**
 * Outgoing submission queue with idempotent upsert keys.
 *
 * Each rating is identified by (task, judge, label, parameter).  A key
 * that was already acknowledged is never sent again — re-enqueueing it
 * is a no-op — so retrying after a partial failure cannot double-submit.
 * A send that fails keeps its submission pending for the next drain;
 * only a server-side validation rejection (ApiError) is treated as
 * permanent and reported instead of retried.
 */
import { ApiError } from "./api.js";
export function submissionKey(submission) {
    return [
        submission.task_id,
        submission.judge_id,
        submission.label,
        String(submission.parameter),
    ].join("|");
}
export class SubmissionQueue {
    send;
    pendingByKey = new Map();
    ackedKeys = new Set();
    constructor(send) {
        this.send = send;
    }
    /** Queue submissions, skipping keys already pending or already acked. */
    enqueue(submissions) {
        for (const submission of submissions) {
            const key = submissionKey(submission);
            if (this.ackedKeys.has(key)) {
                continue; // already acknowledged once; never send a duplicate
            }
            this.pendingByKey.set(key, submission); // latest draft wins pre-send
        }
    }
    get pendingCount() {
        return this.pendingByKey.size;
    }
    get ackedCount() {
        return this.ackedKeys.size;
    }
    /**
     * Try to send everything pending, in insertion order.  Stops at the
     * first connectivity failure (the rest would meet the same dead
     * socket) but keeps going past validation rejections.
     */
    async drain() {
        const report = { sent: 0, pending: 0, rejected: [] };
        for (const [key, submission] of [...this.pendingByKey]) {
            try {
                await this.send(submission);
            }
            catch (error) {
                if (error instanceof ApiError) {
                    this.pendingByKey.delete(key);
                    report.rejected.push({ submission, error });
                    continue;
                }
                break; // connectivity: keep this and the rest for the next drain
            }
            this.pendingByKey.delete(key);
            this.ackedKeys.add(key);
            report.sent += 1;
        }
        report.pending = this.pendingByKey.size;
        return report;
    }
}
