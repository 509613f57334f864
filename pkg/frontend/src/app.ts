// Application shell: tab navigation, the resource list, the grid with
// its annotation form, the query console and the report view.  The
// browser location always encodes (view, iri, sel, page), so reloading
// or sharing the URL reproduces the exact view.

import { ApiClient, ApiError, ResourceSummary } from "./api.js";
import { a1ToCell } from "./a1.js";
import { renderResource } from "./grid.js";
import { QueryConsole } from "./queryConsole.js";
import { ReportView } from "./reportView.js";
import {
    EMPTY_STATE,
    SelectionState,
    ViewName,
    splitDeepLink,
    stateFromSearch,
    stateToSearch,
} from "./state.js";
import { TripleForm } from "./tripleForm.js";

export interface AppOptions {
    root: HTMLElement;
    api: ApiClient;
    win: Window;
    vocabNamespace: string;
}

export class App {
    state: SelectionState = { ...EMPTY_STATE };
    readonly form: TripleForm;
    readonly console: QueryConsole;
    readonly report: ReportView;
    private readonly doc: Document;
    private readonly gridSlot: HTMLElement;
    private readonly currentLink: HTMLElement;
    private readonly errorBox: HTMLElement;
    private readonly resourceList: HTMLElement;
    private task: Promise<void> = Promise.resolve();

    constructor(private readonly options: AppOptions) {
        this.doc = options.root.ownerDocument;
        options.root.innerHTML = `
          <header class="topbar">
            <h1>datacat</h1>
            <nav class="tabs">
              <button data-view="browse" class="tab active">Browse</button>
              <button data-view="query" class="tab">Query</button>
              <button data-view="report" class="tab">Report</button>
            </nav>
            <form class="jump"><input class="jump-input" placeholder="jump: H1" size="8"><button>Go</button></form>
          </header>
          <div class="layout">
            <aside class="resources"><h2>Resources</h2><ul class="resource-list"></ul></aside>
            <main>
              <p class="error-box" role="alert" hidden></p>
              <div class="pane browse-pane">
                <p class="current-link"></p>
                <div class="grid-slot"></div>
                <div class="form-slot"></div>
              </div>
              <div class="pane query-pane" hidden></div>
              <div class="pane report-pane" hidden></div>
            </main>
          </div>
        `;
        this.gridSlot = options.root.querySelector(".grid-slot")!;
        this.currentLink = options.root.querySelector(".current-link")!;
        this.errorBox = options.root.querySelector(".error-box")!;
        this.resourceList = options.root.querySelector(".resource-list")!;

        this.form = new TripleForm(this.doc, options.api, options.vocabNamespace);
        options.root.querySelector(".form-slot")!.appendChild(this.form.root);
        this.console = new QueryConsole(this.doc, options.api, (iri) => void this.openIri(iri));
        options.root.querySelector(".query-pane")!.appendChild(this.console.root);
        this.report = new ReportView(this.doc, options.api, (iri) => void this.openIri(iri));
        options.root.querySelector(".report-pane")!.appendChild(this.report.root);

        for (const tab of Array.from(options.root.querySelectorAll<HTMLButtonElement>(".tab"))) {
            tab.addEventListener("click", () => {
                void this.navigate({ view: tab.dataset.view as ViewName });
            });
        }
        options.root.querySelector(".jump")!.addEventListener("submit", (event) => {
            event.preventDefault();
            this.jump();
        });
        options.win.addEventListener("popstate", () => {
            void this.applyLocation();
        });
    }

    whenIdle(): Promise<void> {
        return this.task;
    }

    private enqueue(work: () => Promise<void>): Promise<void> {
        this.task = this.task.then(work, work);
        return this.task;
    }

    start(): Promise<void> {
        return this.enqueue(async () => {
            await this.loadResources();
            this.state = stateFromSearch(this.options.win.location.search);
            await this.render();
        });
    }

    private async loadResources(): Promise<void> {
        const { resources } = await this.options.api.resources();
        this.resourceList.replaceChildren();
        for (const resource of resources) {
            const li = this.doc.createElement("li");
            const link = this.doc.createElement("a");
            link.href = "#";
            link.className = "resource-link";
            link.setAttribute("data-iri", resource.iri);
            link.textContent = resource.name;
            link.title = resource.iri;
            link.addEventListener("click", (event) => {
                event.preventDefault();
                void this.navigate({ view: "browse", iri: resource.iri, sel: null, page: null });
            });
            li.appendChild(link);
            li.appendChild(this.doc.createTextNode(" " + describe(resource)));
            this.resourceList.appendChild(li);
        }
    }

    /** Merge a state change, update the location, re-render. */
    navigate(change: Partial<SelectionState>, push = true): Promise<void> {
        return this.enqueue(async () => {
            this.state = { ...this.state, ...change };
            if (push) {
                const url = this.options.win.location.pathname + stateToSearch(this.state);
                this.options.win.history.pushState(null, "", url);
            }
            await this.render();
        });
    }

    /** Open any deep link (from reports, query results, annotations). */
    openIri(iri: string): Promise<void> {
        const { base, sel } = splitDeepLink(iri);
        return this.navigate({ view: "browse", iri: base, sel, page: null });
    }

    private applyLocation(): Promise<void> {
        return this.enqueue(async () => {
            this.state = stateFromSearch(this.options.win.location.search);
            await this.render();
        });
    }

    private jump(): void {
        const input = this.options.root.querySelector<HTMLInputElement>(".jump-input")!;
        try {
            const { row, col } = a1ToCell(input.value);
            void this.navigate({ view: "browse", sel: `cell=${row},${col}`, page: null });
            input.setCustomValidity("");
        } catch (error) {
            input.setCustomValidity(String(error));
        }
    }

    private showError(error: unknown): void {
        this.errorBox.hidden = false;
        this.errorBox.textContent =
            error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    }

    private async render(): Promise<void> {
        const { root } = this.options;
        this.errorBox.hidden = true;
        for (const tab of Array.from(root.querySelectorAll<HTMLButtonElement>(".tab"))) {
            tab.classList.toggle("active", tab.dataset.view === this.state.view);
        }
        for (const [name, selector] of [
            ["browse", ".browse-pane"],
            ["query", ".query-pane"],
            ["report", ".report-pane"],
        ] as const) {
            root.querySelector<HTMLElement>(selector)!.hidden = this.state.view !== name;
        }
        if (this.state.view === "browse") {
            await this.renderBrowse();
        } else if (this.state.view === "report" && this.state.iri) {
            await this.report.show(this.state.iri);
        }
    }

    private async renderBrowse(): Promise<void> {
        if (!this.state.iri) {
            this.gridSlot.replaceChildren();
            this.currentLink.textContent = "pick a resource on the left";
            return;
        }
        let payload;
        try {
            payload = await this.options.api.resourceView(
                this.state.iri, this.state.sel, this.state.page,
            );
        } catch (error) {
            this.showError(error);
            return;
        }
        const current = payload.selection?.iri ?? payload.iri;
        this.currentLink.replaceChildren();
        const label = this.doc.createElement("code");
        label.textContent = current;
        this.currentLink.appendChild(label);
        const grid = renderResource(this.doc, payload, {
            onSelect: (sel) => void this.navigate({ sel, page: null }),
            onPage: (page) => void this.navigate({ page }),
        });
        this.gridSlot.replaceChildren(grid);
        // the form's subject is always the API's canonical deep link
        await this.form.setSubject(current);
    }
}

function describe(resource: ResourceSummary): string {
    if (resource.kind === "table") return `(${resource.rows}x${resource.cols})`;
    return `(${resource.lines} lines)`;
}
