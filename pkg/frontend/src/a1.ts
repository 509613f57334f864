// Spreadsheet-style cell labels for the jump box and column headers.
// A1 notation only ever appears at input boundaries; IRIs stay numeric.

const LABEL = /^([A-Za-z]+)([0-9]+)$/;

/** "H1" -> { row: 1, col: 8 }; throws on anything else. */
export function a1ToCell(label: string): { row: number; col: number } {
    const m = LABEL.exec(label.trim());
    if (!m) throw new Error(`not an A1 cell label: ${label}`);
    let col = 0;
    for (const ch of m[1].toUpperCase()) {
        col = col * 26 + (ch.charCodeAt(0) - 64);
    }
    const row = parseInt(m[2], 10);
    if (row === 0) throw new Error("row 0 is not a valid A1 label row");
    return { row, col };
}

/** 1 -> "A", 27 -> "AA". */
export function colToLetters(col: number): string {
    if (col < 1) throw new Error(`column index must be >= 1, got ${col}`);
    let out = "";
    while (col > 0) {
        const rem = (col - 1) % 26;
        out = String.fromCharCode(65 + rem) + out;
        col = Math.floor((col - 1) / 26);
    }
    return out;
}
