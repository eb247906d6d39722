# src/experiments/storage.py
"""
CSV/JSON result files. Every file opens with `# key=value` lines recording the
master seed and the full resolved configuration, so it can be passed back as
--config to reproduce itself.
"""
import csv
import json
import os

import numpy as np

from experiments.settings import CONFIG_HEADER_KEY

EMISSIONS_COLUMNS = ("step", "t", "r1", "r2")


def _cell(value):
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _plain(value):
    """JSON-serializable copy of numpy scalars and arrays."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    return _cell(value)


class TableWriter:
    """Row-at-a-time CSV writer; each row is flushed so an interrupted run keeps its completed rows."""

    def __init__(self, path: str, header_lines: list[str], columns):
        self.path = path
        try:
            self._file = open(path, "w", newline="", encoding="utf-8")
            for line in header_lines:
                self._file.write(line + "\n")
            self._writer = csv.writer(self._file, lineterminator="\n")
            self._writer.writerow(columns)
            self._file.flush()
        except OSError as e:
            raise OSError(f"ResultStore: could not write {path}: {e}") from e
        self.n_columns = len(columns)

    def write_row(self, row):
        if len(row) != self.n_columns:
            raise ValueError(f"TableWriter: expected {self.n_columns} values, got {len(row)} for {self.path}.")
        try:
            self._writer.writerow([_cell(v) for v in row])
            self._file.flush()
        except OSError as e:
            raise OSError(f"ResultStore: could not write {self.path}: {e}") from e

    def close(self):
        self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class ResultStore:
    def __init__(self, output_dir: str, config: dict):
        self.output_dir = output_dir
        self.config = config
        try:
            if not os.path.isdir(output_dir):
                print(f"ResultStore: Output directory '{output_dir}' does not exist. Creating it...")
                os.makedirs(output_dir, exist_ok=True)
        except OSError as e:
            raise OSError(f"ResultStore: could not create output directory {output_dir}: {e}") from e
        self.written: list[str] = []

    def header_lines(self) -> list[str]:
        return [f"# seed={self.config['seed']}",
                f"# {CONFIG_HEADER_KEY}={json.dumps(self.config, sort_keys=True)}"]

    def path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def open_table(self, name: str, columns) -> TableWriter:
        writer = TableWriter(self.path(name), self.header_lines(), columns)
        self.written.append(writer.path)
        return writer

    def write_table(self, name: str, columns, rows) -> str:
        with self.open_table(name, columns) as table:
            for row in rows:
                table.write_row(row)
        print(f"ResultStore: Wrote {table.path}.")
        return table.path

    def write_json(self, name: str, payload: dict) -> str:
        path = self.path(name)
        document = {"seed": self.config["seed"], CONFIG_HEADER_KEY: self.config}
        document.update(_plain(payload))
        try:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(document, f, indent=2, sort_keys=True)
                f.write("\n")
        except OSError as e:
            raise OSError(f"ResultStore: could not write {path}: {e}") from e
        self.written.append(path)
        print(f"ResultStore: Wrote {path}.")
        return path


def read_emissions_csv(path: str) -> tuple[dict, np.ndarray, np.ndarray, np.ndarray]:
    """(header config, step, r1, r2) of an emissions CSV; the config is {} when absent."""
    if not os.path.exists(path):
        raise FileNotFoundError(f"read_emissions_csv: emissions file not found at {path}")
    header = {}
    prefix = f"# {CONFIG_HEADER_KEY}="
    rows = []
    try:
        with open(path, "r", newline="", encoding="utf-8") as f:
            lines = [line for line in f]
    except OSError as e:
        raise OSError(f"read_emissions_csv: could not read {path}: {e}") from e

    body = []
    for line in lines:
        if line.startswith(prefix):
            header = json.loads(line[len(prefix):])
        elif not line.startswith("#"):
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader, None)
    if columns is None or tuple(columns) != EMISSIONS_COLUMNS:
        raise ValueError(f"read_emissions_csv: {path} must have columns {','.join(EMISSIONS_COLUMNS)}, "
                         f"got {columns}.")
    for row in reader:
        if row:
            rows.append((int(row[0]), int(row[2]), int(row[3])))
    if not rows:
        raise ValueError(f"read_emissions_csv: {path} contains no emission rows.")
    table = np.array(rows, dtype=np.int64)
    if np.any(np.diff(table[:, 0]) != 1):
        raise ValueError(f"read_emissions_csv: steps in {path} must be consecutive.")
    if np.any((table[:, 1:] != 0) & (table[:, 1:] != 1)):
        raise ValueError(f"read_emissions_csv: r1 and r2 in {path} must be 0 or 1.")
    return header, table[:, 0], table[:, 1].astype(np.uint8), table[:, 2].astype(np.uint8)
