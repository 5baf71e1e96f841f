"""Regenerate tests/fixtures/catalog_cells.tsv straight from a LaTeX source.

Usage: python3 tools/extract_table_cells.py SOURCE > tests/fixtures/catalog_cells.tsv

This reads the tabular environments and the itemized alternating-group cases
without going through the package, so the golden test compares two
independent transcriptions.
"""

import re
import sys


def strip_multirow(cell: str) -> str:
    cell = cell.strip()
    m = re.fullmatch(r"\\multirow\{\d+\}\*\{(.*)\}", cell, flags=re.S)
    return m.group(1).strip() if m else cell


def table_rows(src: str, label: str) -> list[list[str]]:
    start = src.index(r"\label{" + label + "}")
    body = src[src.index(r"\begin{tabular}", start):src.index(r"\end{tabular}", start)]
    chunks = [c for c in body.split(r"\hline")[2:] if c.strip()]
    rows = []
    for chunk in chunks:
        lines = [ln for ln in chunk.split(r"\\") if ln.strip()]
        merged = None
        for ln in lines:
            cells = [strip_multirow(c) for c in ln.replace("\n", " ").split("&")]
            if merged is None or cells[0].strip():
                # a nonempty first cell starts a new row
                if merged is not None:
                    rows.append(merged)
                merged = cells
            else:
                merged = [(a + " " + b.strip()).strip() if b.strip() else a
                          for a, b in zip(merged, cells)]
        rows.append(merged)
    return rows


def a_cases(src: str) -> list[list[str]]:
    L = re.search(r"\\item\[\(a\)\] (\$\\A_n.*?\$ with \$n\\geqslant10\$)", src).group(1)
    out = []
    for tag, text in re.findall(r"\\item\[\((a\.\d)\)\] (.*)", src):
        text = text.strip().rstrip(";.")
        h, k = text.rsplit(", and ", 1)
        out.append(["A", tag, L, h, k, ""])
    return out


def main(path: str) -> None:
    src = open(path, encoding="utf-8").read()
    print("table\trow\tL\tH\tK\texample")
    for table, label in (("T1", "tab1"), ("T2", "tab2"), ("T5", "tab5")):
        for cells in table_rows(src, label):
            row = cells[0].strip().rstrip("~")
            ex = cells[4].strip() if len(cells) > 4 else ""
            print("\t".join([table, row, cells[1].strip(), cells[2].strip(), cells[3].strip(), ex]))
    for cells in a_cases(src):
        print("\t".join(cells))


if __name__ == "__main__":
    main(sys.argv[1])
