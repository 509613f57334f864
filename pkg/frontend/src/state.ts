// Selection state and its round trip through the browser location.
// The URL always encodes (view, iri, sel, page) so reloading or sharing
// a link reproduces the exact view.

export type ViewName = "browse" | "query" | "report";

export interface SelectionState {
    view: ViewName;
    iri: string | null;
    sel: string | null;
    page: number | null;
}

export const EMPTY_STATE: SelectionState = { view: "browse", iri: null, sel: null, page: null };

export function stateToSearch(state: SelectionState): string {
    const params = new URLSearchParams();
    if (state.view !== "browse") params.set("view", state.view);
    if (state.iri) params.set("iri", state.iri);
    if (state.sel) params.set("sel", state.sel);
    if (state.page !== null && state.page > 1) params.set("page", String(state.page));
    const text = params.toString();
    return text ? "?" + text : "";
}

export function stateFromSearch(search: string): SelectionState {
    const params = new URLSearchParams(search);
    const view = params.get("view");
    const page = params.get("page");
    const parsedPage = page === null ? null : parseInt(page, 10);
    return {
        view: view === "query" || view === "report" ? view : "browse",
        iri: params.get("iri"),
        sel: params.get("sel"),
        page: parsedPage !== null && Number.isFinite(parsedPage) && parsedPage > 0 ? parsedPage : null,
    };
}

/** Split a deep link into its base IRI and fragment selector text. */
export function splitDeepLink(iri: string): { base: string; sel: string | null } {
    const hash = iri.indexOf("#");
    if (hash < 0) return { base: iri, sel: null };
    return { base: iri.slice(0, hash), sel: iri.slice(hash + 1) || null };
}
