/**
 * Browser entry point: binds the annotation controller to the page.
 *
 * This is the only module that touches document/window.  Everything with
 * logic worth testing lives in the imported modules; this file renders
 * the current state into #app and translates DOM events (clicks, the
 * 1-5 keyboard shortcuts) into controller calls.
 */
import { ApiClient } from "./api.js";
import { AnnotationController, nextControl } from "./controller.js";
import { DraftStore } from "./drafts.js";
import { renderCompletion, renderJudgePrompt, renderRetryBanner, renderTask, } from "./render.js";
function mount() {
    const element = document.querySelector("#app");
    if (element === null) {
        throw new Error("page is missing the #app mount point");
    }
    return element;
}
function judgeFromUrl() {
    return new URLSearchParams(window.location.search).get("judge")?.trim() ?? "";
}
/** Re-render the whole view from the controller's state. */
function draw(controller, root) {
    const state = controller.current;
    switch (state.kind) {
        case "loading":
            root.innerHTML = `<p class="loading">Loading…</p>`;
            return;
        case "done":
            root.innerHTML = renderCompletion(controller.judgeId);
            return;
        case "error":
            root.innerHTML =
                `<div class="retry-banner" role="alert">Cannot reach the server ` +
                    `(${escapeText(state.reason)}). <button id="retry" type="button">retry</button></div>`;
            return;
        case "rejected":
            root.innerHTML =
                `<div class="retry-banner" role="alert">The server rejected a rating: ` +
                    `${escapeText(state.reason)}. Please re-check this sentence.</div>` +
                    renderTask(state.task, (l, p) => controller.draftFor(l, p), controller.canSubmit());
            return;
        case "retrying":
            root.innerHTML =
                renderRetryBanner(state.pending) +
                    renderTask(state.task, (l, p) => controller.draftFor(l, p), controller.canSubmit());
            return;
        case "rating":
            root.innerHTML = renderTask(state.task, (l, p) => controller.draftFor(l, p), controller.canSubmit());
            return;
    }
}
function escapeText(text) {
    const div = document.createElement("div");
    div.textContent = text;
    return div.innerHTML;
}
function focusControl(root, label, parameter) {
    const selector = `.parameter[data-label="${label}"][data-parameter="${parameter}"] input`;
    root.querySelector(selector)?.focus();
}
async function act(controller, root, action) {
    await action();
    draw(controller, root);
}
function wire(controller, root) {
    root.addEventListener("change", (event) => {
        const input = event.target;
        if (!(input instanceof HTMLInputElement) || input.type !== "radio") {
            return;
        }
        const label = input.dataset["label"];
        const parameter = Number(input.dataset["parameter"]);
        if (label === undefined || Number.isNaN(parameter)) {
            return;
        }
        controller.rate(label, parameter, Number(input.value));
        // Enable submit in place rather than re-rendering, so focus survives.
        const submit = root.querySelector("#submit");
        if (submit !== null) {
            submit.disabled = !controller.canSubmit();
        }
    });
    root.addEventListener("click", (event) => {
        const target = event.target;
        if (!(target instanceof HTMLElement)) {
            return;
        }
        if (target.id === "submit") {
            void act(controller, root, () => controller.submitAll());
        }
        if (target.id === "retry") {
            void act(controller, root, () => controller.current.kind === "error" ? controller.loadNext() : controller.retry());
        }
    });
    // Keyboard shortcuts: with a rating row focused, 1-5 rates it and
    // moves focus to the next unrated row.
    document.addEventListener("keydown", (event) => {
        if (event.key < "1" || event.key > "5") {
            return;
        }
        const active = document.activeElement;
        if (!(active instanceof HTMLInputElement) || active.type !== "radio") {
            return;
        }
        const label = active.dataset["label"];
        const parameter = Number(active.dataset["parameter"]);
        if (label === undefined || Number.isNaN(parameter)) {
            return;
        }
        event.preventDefault();
        const rating = Number(event.key);
        controller.rate(label, parameter, rating);
        const state = controller.current;
        if (state.kind !== "rating" && state.kind !== "retrying" && state.kind !== "rejected") {
            return;
        }
        const group = root.querySelector(`.parameter[data-label="${label}"][data-parameter="${parameter}"]`);
        const radio = group?.querySelector(`input[value="${rating}"]`);
        if (radio) {
            radio.checked = true;
        }
        const submit = root.querySelector("#submit");
        if (submit !== null) {
            submit.disabled = !controller.canSubmit();
        }
        const labels = controller.labels(state.task);
        const parameters = controller.parameters(state.task);
        const next = nextControl(labels, parameters, label, parameter);
        if (next !== null) {
            focusControl(root, next.label, next.parameter);
        }
    });
}
async function main() {
    const root = mount();
    const judgeId = judgeFromUrl();
    if (judgeId === "") {
        root.innerHTML = renderJudgePrompt();
        document.querySelector("#judge-form")?.addEventListener("submit", (event) => {
            event.preventDefault();
            const input = document.querySelector("#judge-input");
            const name = input?.value.trim() ?? "";
            if (name !== "") {
                const url = new URL(window.location.href);
                url.searchParams.set("judge", name);
                window.location.assign(url.toString());
            }
        });
        return;
    }
    const controller = new AnnotationController(new ApiClient(""), new DraftStore(window.sessionStorage, judgeId), judgeId);
    wire(controller, root);
    draw(controller, root);
    await controller.loadNext();
    draw(controller, root);
}
void main();
