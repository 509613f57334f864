// Query console: run BGP text, show bindings as a table.  IRI bindings
// that are deep links become clickable and open the viewer on them.

import { ApiClient, ApiError } from "./api.js";
import { displayTerm, iriOf } from "./terms.js";

const EXAMPLE = 'SELECT ?c WHERE {?c du:distinctCount "1"^^xsd:integer}';

export class QueryConsole {
    readonly root: HTMLElement;
    private input: HTMLTextAreaElement;
    private output: HTMLElement;

    constructor(
        private readonly doc: Document,
        private readonly api: ApiClient,
        private readonly onOpenIri: (iri: string) => void,
    ) {
        this.root = doc.createElement("section");
        this.root.className = "query-console";
        this.root.innerHTML = `
          <h2>Query</h2>
          <textarea class="query-text" rows="4" spellcheck="false"></textarea>
          <div><button class="run">Run</button></div>
          <div class="query-output"></div>
        `;
        this.input = this.root.querySelector(".query-text")!;
        this.input.value = EXAMPLE;
        this.output = this.root.querySelector(".query-output")!;
        this.root.querySelector(".run")!.addEventListener("click", () => void this.run());
    }

    async run(): Promise<void> {
        this.output.replaceChildren();
        let result;
        try {
            result = await this.api.query(this.input.value);
        } catch (error) {
            const div = this.doc.createElement("pre");
            div.className = "query-error";
            div.textContent =
                error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
            this.output.appendChild(div);
            return;
        }
        if (result.bindings.length === 0) {
            const p = this.doc.createElement("p");
            p.className = "no-matches";
            p.textContent = "no matches";
            this.output.appendChild(p);
            return;
        }
        const table = this.doc.createElement("table");
        table.className = "bindings";
        const head = this.doc.createElement("tr");
        for (const name of result.vars) {
            const th = this.doc.createElement("th");
            th.textContent = "?" + name;
            head.appendChild(th);
        }
        table.appendChild(head);
        for (const row of result.bindings) {
            const tr = this.doc.createElement("tr");
            for (const name of result.vars) {
                const td = this.doc.createElement("td");
                const termText = row[name];
                const iri = iriOf(termText);
                if (iri) {
                    const link = this.doc.createElement("a");
                    link.href = iri;
                    link.textContent = iri;
                    link.title = "open in the viewer";
                    link.addEventListener("click", (event) => {
                        event.preventDefault();
                        this.onOpenIri(iri);
                    });
                    td.appendChild(link);
                } else {
                    td.textContent = displayTerm(termText);
                    td.title = termText;
                }
                tr.appendChild(td);
            }
            table.appendChild(tr);
        }
        this.output.appendChild(table);
    }
}
