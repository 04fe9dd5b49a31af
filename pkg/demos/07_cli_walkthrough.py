"""The same pipeline through the command-line interface.

Each subcommand reads and updates one portable session JSON, so the workflow
can stop and resume anywhere. This script drives the CLI in-process against a
temporary copy of the bundled data; the equivalent shell session is printed
alongside.
"""

import json
import shutil
import tempfile
from pathlib import Path

from bwd.cli import main as bwd
from bwd.session import Session

DATA = Path(__file__).parent / "data" / "carriers.csv"


def run(*argv: str) -> None:
    print(f"\n$ bwd {' '.join(argv)}")
    code = bwd(list(argv))
    if code != 0:
        raise SystemExit(f"command failed with exit code {code}")


def main() -> None:
    workdir = Path(tempfile.mkdtemp(prefix="bwd-demo-"))
    matrix = workdir / "carriers.csv"
    shutil.copy(DATA, matrix)
    session = workdir / "carriers.session.json"

    run(
        "refset",
        "--matrix", str(matrix),
        "--segments", "2",
        "--coverage", "1",
        "--add", "Cargomar,Veloway",
        "--session", str(session),
    )

    # Judgments arrive from the expert (normally via the web UI); here they
    # are written straight into the session document.
    s = Session.load(session)
    s.set_comparisons(
        best="Nordline",
        worst="Transium",
        bo={"Nordline": 1, "Veloway": 3, "Cargomar": 4, "Transium": 7},
        ow={"Nordline": 7, "Veloway": 4, "Cargomar": 3, "Transium": 1},
    )
    s.bump()
    s.save(session)
    print(f"\n(judgments written into {session.name})")

    thresholds = workdir / "thresholds.csv"
    thresholds.write_text("size,a_bw,threshold\n4,7,0.3\n")
    run("check", "--session", str(session), "--thresholds", str(thresholds))
    run("solve", "--session", str(session))
    run("ranks", "--session", str(session), "--csv", str(workdir / "ranks.csv"))
    run("hasse", "--session", str(session), "--out", str(workdir / "hasse.dot"))

    doc = json.loads(session.read_text())
    print(
        f"\nsession cache now holds: {sorted(doc['cache'])} "
        f"(revision {doc['revision']})"
    )
    print(f"work dir: {workdir}")


if __name__ == "__main__":
    main()
