// Report view: pulls the server-rendered report and embeds it, turning
// its deep-link anchors into in-app navigation back to the grid.

import { ApiClient, ApiError } from "./api.js";

export class ReportView {
    readonly root: HTMLElement;

    constructor(
        private readonly doc: Document,
        private readonly api: ApiClient,
        private readonly onOpenIri: (iri: string) => void,
    ) {
        this.root = doc.createElement("section");
        this.root.className = "report-view";
    }

    async show(iri: string): Promise<void> {
        this.root.replaceChildren();
        let html: string;
        try {
            html = await this.api.reportHtml(iri);
        } catch (error) {
            const p = this.doc.createElement("p");
            p.className = "error";
            p.textContent =
                error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
            this.root.appendChild(p);
            return;
        }
        const parsed = new this.doc.defaultView!.DOMParser().parseFromString(html, "text/html");
        const container = this.doc.createElement("div");
        container.className = "report-body";
        for (const node of Array.from(parsed.body.childNodes)) {
            container.appendChild(this.doc.importNode(node, true));
        }
        for (const anchor of Array.from(container.querySelectorAll("a[href]"))) {
            anchor.addEventListener("click", (event) => {
                event.preventDefault();
                this.onOpenIri(anchor.getAttribute("href")!);
            });
        }
        this.root.appendChild(container);
    }
}
