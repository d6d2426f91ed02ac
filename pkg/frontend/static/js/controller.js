/**
 * The annotation session's state machine, free of any DOM concerns.
 *
 * One judge, one task at a time: load the next task, collect a draft
 * rating for every (blind label, parameter) control, submit the lot as
 * individual idempotent POSTs, advance.  Connectivity failures park the
 * unsent remainder in the queue and surface a retrying state; drafts
 * stay put until the server has acknowledged every rating of the task.
 */
import { SubmissionQueue } from "./queue.js";
export class AnnotationController {
    api;
    drafts;
    judgeId;
    state = { kind: "loading" };
    queue;
    constructor(api, drafts, judgeId) {
        this.api = api;
        this.drafts = drafts;
        this.judgeId = judgeId;
        this.queue = new SubmissionQueue((submission) => this.api.submitRating(submission));
    }
    get current() {
        return this.state;
    }
    /** Blind labels of the current task, in display order. */
    labels(task) {
        return Object.keys(task.candidates).sort();
    }
    parameters(task) {
        return task.parameters.map((entry) => entry.parameter);
    }
    /** Fetch the next task (or the all-done state) from the server. */
    async loadNext() {
        this.state = { kind: "loading" };
        try {
            const task = await this.api.nextTask(this.judgeId);
            this.state = task === null ? { kind: "done" } : { kind: "rating", task };
        }
        catch (error) {
            this.state = { kind: "error", reason: String(error) };
        }
        return this.state;
    }
    /** Record one draft rating for the task on screen. */
    rate(label, parameter, rating) {
        const task = this.taskOnScreen();
        this.drafts.set(task.task_id, label, parameter, rating);
    }
    draftFor(label, parameter) {
        const task = this.taskOnScreen();
        return this.drafts.get(task.task_id, label, parameter);
    }
    /** Submit gate: every label x parameter control must carry a rating. */
    canSubmit() {
        const task = this.taskOnScreen();
        return this.drafts.isComplete(task.task_id, this.labels(task), this.parameters(task));
    }
    /**
     * Submit every drafted rating.  Full success clears the drafts and
     * advances to the next task; a connectivity failure mid-way keeps what
     * remains queued (idempotent keys stop anything acked going twice) and
     * enters the retrying state for the UI to offer a retry.
     */
    async submitAll() {
        const task = this.taskOnScreen();
        if (!this.canSubmit()) {
            throw new Error("submit called with unrated parameters");
        }
        const submissions = this.drafts
            .entries(task.task_id)
            .map(({ label, parameter, rating }) => ({
            task_id: task.task_id,
            judge_id: this.judgeId,
            label,
            parameter,
            rating,
        }));
        this.queue.enqueue(submissions);
        return this.drainAndAdvance(task);
    }
    /** Retry whatever is still pending after a connectivity failure. */
    async retry() {
        const task = this.taskOnScreen();
        return this.drainAndAdvance(task);
    }
    async drainAndAdvance(task) {
        const report = await this.queue.drain();
        if (report.rejected.length > 0) {
            // The server says these can never succeed; make the first reason visible.
            const first = report.rejected[0];
            this.state = {
                kind: "rejected",
                task,
                reason: first === undefined ? "rejected" : first.error.message,
            };
            return this.state;
        }
        if (report.pending > 0) {
            this.state = { kind: "retrying", task, pending: report.pending };
            return this.state;
        }
        this.drafts.clear(task.task_id);
        return this.loadNext();
    }
    taskOnScreen() {
        if (this.state.kind === "rating" || this.state.kind === "retrying" || this.state.kind === "rejected") {
            return this.state.task;
        }
        throw new Error(`no task on screen in state ${this.state.kind}`);
    }
}
/**
 * Keyboard-flow helper: after rating (label, parameter), which control
 * should take focus next?  Walks parameters within a system, then moves
 * to the next system; null past the very last control.
 */
export function nextControl(labels, parameters, label, parameter) {
    const labelIndex = labels.indexOf(label);
    const parameterIndex = parameters.indexOf(parameter);
    if (labelIndex === -1 || parameterIndex === -1) {
        return null;
    }
    if (parameterIndex + 1 < parameters.length) {
        const parameterNext = parameters[parameterIndex + 1];
        return parameterNext === undefined ? null : { label, parameter: parameterNext };
    }
    if (labelIndex + 1 < labels.length) {
        const labelNext = labels[labelIndex + 1];
        const firstParameter = parameters[0];
        return labelNext === undefined || firstParameter === undefined
            ? null
            : { label: labelNext, parameter: firstParameter };
    }
    return null;
}
