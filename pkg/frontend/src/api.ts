// Thin client over the catalog's JSON API.

export interface ApiErrorBody {
    code: string;
    message: string;
}

export class ApiError extends Error {
    readonly code: string;
    readonly status: number;

    constructor(status: number, body: ApiErrorBody) {
        super(body.message);
        this.code = body.code;
        this.status = status;
    }
}

export interface CellPayload {
    value: string;
    iri: string;
}

export interface HeaderPayload {
    label: string;
    iri: string;
    header?: string | null;
}

export interface SelectionPayload {
    sel: string;
    iri: string;
    bounds: Record<string, number>;
}

export interface PagePayload {
    number: number;
    size: number;
    count: number;
    startRow?: number;
    endRow?: number;
    startLine?: number;
    endLine?: number;
}

export interface TableViewPayload {
    iri: string;
    kind: "table";
    name: string;
    rows: number;
    cols: number;
    headerRow: boolean;
    page: PagePayload;
    selection: SelectionPayload | null;
    columnHeaders: HeaderPayload[];
    rowHeaders: HeaderPayload[];
    cells: CellPayload[][];
}

export interface TextViewPayload {
    iri: string;
    kind: "text";
    name: string;
    lines: number;
    page: PagePayload;
    selection: SelectionPayload | null;
    items: { number: number; value: string; iri: string }[];
}

export type ResourceViewPayload = TableViewPayload | TextViewPayload;

export interface ResourceSummary {
    iri: string;
    kind: "table" | "text";
    name: string;
    rows?: number;
    cols?: number;
    lines?: number;
}

export interface TripleBody {
    subject: string;
    predicate: string;
    object: string;
}

export interface AddTripleResult {
    inserted: boolean;
    triple: TripleBody;
}

export interface QueryResult {
    vars: string[];
    bindings: Record<string, string>[];
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
    constructor(
        private readonly baseUrl: string,
        private readonly fetchFn: FetchLike = (...args) => globalThis.fetch(...args),
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchFn(this.baseUrl + path, init);
        const text = await response.text();
        let body: unknown = null;
        try {
            body = text ? JSON.parse(text) : null;
        } catch {
            body = null;
        }
        if (!response.ok) {
            const error = (body as { error?: ApiErrorBody } | null)?.error;
            throw new ApiError(
                response.status,
                error ?? { code: `HTTP${response.status}`, message: text || response.statusText },
            );
        }
        return body as T;
    }

    resources(): Promise<{ resources: ResourceSummary[] }> {
        return this.request("/api/resources");
    }

    resourceView(iri: string, sel?: string | null, page?: number | null): Promise<ResourceViewPayload> {
        const params = new URLSearchParams({ iri });
        if (sel) params.set("sel", sel);
        if (page) params.set("page", String(page));
        return this.request(`/api/resource?${params}`);
    }

    addTriple(triple: TripleBody): Promise<AddTripleResult> {
        return this.request("/api/triples", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(triple),
        });
    }

    listTriples(subject: string): Promise<{ subject: string; triples: TripleBody[] }> {
        const params = new URLSearchParams({ subject });
        return this.request(`/api/triples?${params}`);
    }

    query(text: string): Promise<QueryResult> {
        return this.request("/api/query", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ query: text }),
        });
    }

    async reportHtml(iri: string): Promise<string> {
        const params = new URLSearchParams({ iri });
        const response = await this.fetchFn(`${this.baseUrl}/report?${params}`);
        if (!response.ok) {
            let body: { error?: ApiErrorBody } | null = null;
            try {
                body = await response.json();
            } catch {
                body = null;
            }
            throw new ApiError(
                response.status,
                body?.error ?? { code: `HTTP${response.status}`, message: response.statusText },
            );
        }
        return response.text();
    }
}
