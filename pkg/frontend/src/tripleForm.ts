// The annotation form: subject prefilled with the current deep link,
// predicate from a small vocabulary dropdown or typed freely, object as
// an IRI or a literal with optional datatype/language.  Submit stays
// disabled until every part parses under the term grammar.

import { ApiClient, ApiError, TripleBody } from "./api.js";
import { displayTerm, escapeLiteral, isValidTerm } from "./terms.js";

const XSD = "http://www.w3.org/2001/XMLSchema#";
const RDFS = "http://www.w3.org/2000/01/rdf-schema#";

export interface VocabOption {
    label: string;
    iri: string;
}

export function predicateOptions(vocabNamespace: string): VocabOption[] {
    const du = (name: string) => ({ label: `du:${name}`, iri: vocabNamespace + name });
    return [
        { label: "rdfs:comment", iri: RDFS + "comment" },
        { label: "rdfs:label", iri: RDFS + "label" },
        { label: "rdfs:seeAlso", iri: RDFS + "seeAlso" },
        du("ofResource"),
        du("value"),
    ];
}

export interface TripleDraft {
    subject: string;
    predicate: string;
    objectKind: "iri" | "literal";
    objectIri: string;
    objectText: string;
    datatype: string;
    lang: string;
}

/** Build the N-Triples object term from the form fields, or null. */
export function objectTermOf(draft: TripleDraft): string | null {
    if (draft.objectKind === "iri") {
        const text = draft.objectIri.trim();
        if (!text) return null;
        return text.startsWith("<") ? text : `<${text}>`;
    }
    let term = `"${escapeLiteral(draft.objectText)}"`;
    const datatype = draft.datatype.trim();
    const lang = draft.lang.trim();
    if (lang) return `${term}@${lang}`;
    if (datatype) {
        const iri = datatype.startsWith("xsd:") ? XSD + datatype.slice(4) : datatype;
        term += `^^<${iri}>`;
    }
    return term;
}

export function draftToTriple(draft: TripleDraft): TripleBody | null {
    const subjectText = draft.subject.trim();
    const predicateText = draft.predicate.trim();
    if (!subjectText || !predicateText) return null;
    const subject = subjectText.startsWith("<") || subjectText.startsWith("_:")
        ? subjectText
        : `<${subjectText}>`;
    const predicate = predicateText.startsWith("<") ? predicateText : `<${predicateText}>`;
    const object = objectTermOf(draft);
    if (object === null) return null;
    if (!isValidTerm(subject) || !isValidTerm(predicate) || !isValidTerm(object)) return null;
    return { subject, predicate, object };
}

export class TripleForm {
    readonly root: HTMLElement;
    /** Last in-flight submit, for callers that need to await it. */
    lastSubmit: Promise<void> = Promise.resolve();
    private subjectInput: HTMLInputElement;
    private predicateInput: HTMLInputElement;
    private predicateSelect: HTMLSelectElement;
    private kindIri: HTMLInputElement;
    private kindLiteral: HTMLInputElement;
    private objectIriInput: HTMLInputElement;
    private objectTextInput: HTMLInputElement;
    private datatypeInput: HTMLInputElement;
    private langInput: HTMLInputElement;
    private submitButton: HTMLButtonElement;
    private notice: HTMLElement;
    private listBody: HTMLElement;

    constructor(
        private readonly doc: Document,
        private readonly api: ApiClient,
        vocabNamespace: string,
    ) {
        this.root = doc.createElement("section");
        this.root.className = "triple-form";
        this.root.innerHTML = `
          <h2>Statements about the selection</h2>
          <form class="annotate">
            <label>Subject <input name="subject" class="subject" spellcheck="false"></label>
            <label>Predicate
              <select name="predicate-choice" class="predicate-choice"><option value="">choose...</option></select>
              <input name="predicate" class="predicate" spellcheck="false">
            </label>
            <fieldset class="object">
              <legend>Object</legend>
              <label><input type="radio" name="kind" value="iri"> IRI
                <input name="object-iri" class="object-iri" spellcheck="false"></label>
              <label><input type="radio" name="kind" value="literal" checked> Literal
                <input name="object-text" class="object-text"></label>
              <label class="extra">datatype <input name="datatype" class="datatype" placeholder="xsd:integer"></label>
              <label class="extra">@lang <input name="lang" class="lang" placeholder="en"></label>
            </fieldset>
            <button type="submit" disabled>Add statement</button>
            <span class="notice" role="status"></span>
          </form>
          <table class="triple-list"><tbody></tbody></table>
        `;
        this.subjectInput = this.root.querySelector(".subject")!;
        this.predicateInput = this.root.querySelector(".predicate")!;
        this.predicateSelect = this.root.querySelector(".predicate-choice")!;
        this.kindIri = this.root.querySelector('input[value="iri"]')!;
        this.kindLiteral = this.root.querySelector('input[value="literal"]')!;
        this.objectIriInput = this.root.querySelector(".object-iri")!;
        this.objectTextInput = this.root.querySelector(".object-text")!;
        this.datatypeInput = this.root.querySelector(".datatype")!;
        this.langInput = this.root.querySelector(".lang")!;
        this.submitButton = this.root.querySelector("button")!;
        this.notice = this.root.querySelector(".notice")!;
        this.listBody = this.root.querySelector(".triple-list tbody")!;

        for (const option of predicateOptions(vocabNamespace)) {
            const node = doc.createElement("option");
            node.value = option.iri;
            node.textContent = option.label;
            this.predicateSelect.appendChild(node);
        }
        this.predicateSelect.addEventListener("change", () => {
            if (this.predicateSelect.value) {
                this.predicateInput.value = this.predicateSelect.value;
                this.revalidate();
            }
        });
        for (const input of [
            this.subjectInput, this.predicateInput, this.objectIriInput,
            this.objectTextInput, this.datatypeInput, this.langInput,
        ]) {
            input.addEventListener("input", () => this.revalidate());
        }
        for (const radio of [this.kindIri, this.kindLiteral]) {
            radio.addEventListener("change", () => this.revalidate());
        }
        this.root.querySelector("form")!.addEventListener("submit", (event) => {
            event.preventDefault();
            this.lastSubmit = this.submit();
        });
    }

    draft(): TripleDraft {
        return {
            subject: this.subjectInput.value,
            predicate: this.predicateInput.value,
            objectKind: this.kindIri.checked ? "iri" : "literal",
            objectIri: this.objectIriInput.value,
            objectText: this.objectTextInput.value,
            datatype: this.datatypeInput.value,
            lang: this.langInput.value,
        };
    }

    setSubject(iri: string): Promise<void> {
        this.subjectInput.value = iri;
        this.revalidate();
        return this.refreshList();
    }

    revalidate(): void {
        this.submitButton.disabled = draftToTriple(this.draft()) === null;
    }

    async submit(): Promise<void> {
        const triple = draftToTriple(this.draft());
        if (!triple) return;
        this.notice.className = "notice";
        try {
            const result = await this.api.addTriple(triple);
            this.notice.textContent = result.inserted ? "statement added" : "already present";
            await this.refreshList();
        } catch (error) {
            this.notice.className = "notice error";
            this.notice.textContent =
                error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
        }
    }

    async refreshList(): Promise<void> {
        const subject = this.subjectInput.value.trim();
        if (!subject) {
            this.listBody.replaceChildren();
            return;
        }
        try {
            const data = await this.api.listTriples(subject);
            this.listBody.replaceChildren();
            for (const triple of data.triples) {
                const tr = this.doc.createElement("tr");
                for (const part of [triple.predicate, triple.object] as const) {
                    const td = this.doc.createElement("td");
                    td.textContent = displayTerm(part);
                    td.title = part;
                    tr.appendChild(td);
                }
                this.listBody.appendChild(tr);
            }
        } catch {
            this.listBody.replaceChildren();
        }
    }
}
