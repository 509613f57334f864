// Grid rendering for table and text resources.  Every cell, row header
// and column header is a clickable deep link using the IRI the API
// minted for it; the grid itself never invents IRIs.  Click-drag over
// cells produces a cell-range selector.

import type { ResourceViewPayload, TableViewPayload, TextViewPayload } from "./api.js";
import { splitDeepLink } from "./state.js";

export interface GridHandlers {
    /** Navigate to a selector of the current resource (sel text, not IRI). */
    onSelect(sel: string | null): void;
    onPage(page: number): void;
}

interface DragState {
    startRow: number;
    startCol: number;
}

function el<K extends keyof HTMLElementTagNameMap>(
    doc: Document,
    tag: K,
    className?: string,
    text?: string,
): HTMLElementTagNameMap[K] {
    const node = doc.createElement(tag);
    if (className) node.className = className;
    if (text !== undefined) node.textContent = text;
    return node;
}

function inBounds(bounds: Record<string, number>, row: number, col: number): boolean {
    return (
        row >= bounds.startRow && row <= bounds.endRow &&
        col >= bounds.startCol && col <= bounds.endCol
    );
}

function pager(doc: Document, payload: ResourceViewPayload, handlers: GridHandlers): HTMLElement {
    const bar = el(doc, "div", "pager");
    const prev = el(doc, "button", "page-prev", "< prev");
    const next = el(doc, "button", "page-next", "next >");
    prev.disabled = payload.page.number <= 1;
    next.disabled = payload.page.number >= payload.page.count;
    prev.addEventListener("click", () => handlers.onPage(payload.page.number - 1));
    next.addEventListener("click", () => handlers.onPage(payload.page.number + 1));
    const label = el(
        doc, "span", "page-label",
        `page ${payload.page.number} of ${payload.page.count}`,
    );
    bar.append(prev, label, next);
    return bar;
}

function renderTable(
    doc: Document,
    payload: TableViewPayload,
    handlers: GridHandlers,
): HTMLElement {
    const container = el(doc, "div", "grid-view");
    const table = el(doc, "table", "grid");
    table.setAttribute("data-iri", payload.iri);
    const bounds = payload.selection?.bounds ?? null;
    let drag: DragState | null = null;

    const headRow = el(doc, "tr");
    headRow.appendChild(el(doc, "th", "corner"));
    payload.columnHeaders.forEach((header, index) => {
        const col = index + 1;
        const th = el(doc, "th", "col-header");
        th.setAttribute("data-iri", header.iri);
        th.title = header.iri;
        const letters = el(doc, "span", "letters", header.label);
        th.appendChild(letters);
        if (header.header) th.appendChild(el(doc, "span", "header-name", header.header));
        if (bounds && inBounds(bounds, bounds.startRow, col) && bounds.startCol <= col && col <= bounds.endCol) {
            th.classList.add("in-selection");
        }
        th.addEventListener("click", () => handlers.onSelect(splitDeepLink(header.iri).sel));
        headRow.appendChild(th);
    });
    table.appendChild(headRow);

    payload.cells.forEach((rowCells, rowIndex) => {
        const rowHeader = payload.rowHeaders[rowIndex];
        const rowNumber = (payload.page.startRow ?? 1) + rowIndex;
        const tr = el(doc, "tr");
        const th = el(doc, "th", "row-header", rowHeader.label);
        th.setAttribute("data-iri", rowHeader.iri);
        th.title = rowHeader.iri;
        th.addEventListener("click", () => handlers.onSelect(splitDeepLink(rowHeader.iri).sel));
        tr.appendChild(th);

        rowCells.forEach((cell, colIndex) => {
            const colNumber = colIndex + 1;
            const td = el(doc, "td", "cell", cell.value);
            td.setAttribute("data-iri", cell.iri);
            td.setAttribute("data-row", String(rowNumber));
            td.setAttribute("data-col", String(colNumber));
            td.title = cell.iri;
            if (bounds && inBounds(bounds, rowNumber, colNumber)) td.classList.add("selected");
            td.addEventListener("mousedown", () => {
                drag = { startRow: rowNumber, startCol: colNumber };
            });
            td.addEventListener("mouseup", () => {
                if (drag && (drag.startRow !== rowNumber || drag.startCol !== colNumber)) {
                    const r1 = Math.min(drag.startRow, rowNumber);
                    const r2 = Math.max(drag.startRow, rowNumber);
                    const c1 = Math.min(drag.startCol, colNumber);
                    const c2 = Math.max(drag.startCol, colNumber);
                    handlers.onSelect(`cell=${r1},${c1}-${r2},${c2}`);
                } else {
                    // the cell's own IRI carries the canonical selector
                    handlers.onSelect(splitDeepLink(cell.iri).sel);
                }
                drag = null;
            });
            tr.appendChild(td);
        });
        table.appendChild(tr);
    });

    container.appendChild(table);
    container.appendChild(pager(doc, payload, handlers));
    return container;
}

function renderText(doc: Document, payload: TextViewPayload, handlers: GridHandlers): HTMLElement {
    const container = el(doc, "div", "text-view");
    const list = el(doc, "table", "lines");
    const bounds = payload.selection?.bounds ?? null;
    for (const item of payload.items) {
        const tr = el(doc, "tr");
        const th = el(doc, "th", "line-number", String(item.number));
        th.setAttribute("data-iri", item.iri);
        th.title = item.iri;
        th.addEventListener("click", () => handlers.onSelect(splitDeepLink(item.iri).sel));
        const td = el(doc, "td", "line", item.value);
        if (bounds && item.number >= bounds.startLine && item.number <= bounds.endLine) {
            tr.classList.add("selected");
        }
        tr.append(th, td);
        list.appendChild(tr);
    }
    container.appendChild(list);
    container.appendChild(pager(doc, payload, handlers));
    return container;
}

export function renderResource(
    doc: Document,
    payload: ResourceViewPayload,
    handlers: GridHandlers,
): HTMLElement {
    if (payload.kind === "table") return renderTable(doc, payload, handlers);
    return renderText(doc, payload, handlers);
}
