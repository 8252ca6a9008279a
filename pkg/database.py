"""
Registre d'execucions de la CLI.
Utilitza SQLite per persistència.
"""
import sqlite3
from pathlib import Path
from typing import Dict, List, Optional

from config import DB_PATH


def init_db(db_path: Path = DB_PATH):
    """Inicialitza la base de dades."""
    db_path = Path(db_path)
    db_path.parent.mkdir(parents=True, exist_ok=True)

    conn = sqlite3.connect(db_path)
    cursor = conn.cursor()

    # Una fila per ordre executada
    cursor.execute("""
        CREATE TABLE IF NOT EXISTS runs (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            command TEXT,
            n INTEGER,
            model TEXT,
            seed INTEGER,
            converged INTEGER,
            steps INTEGER,
            residual REAL,
            output TEXT,
            created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
        )
    """)

    # Resums d'experiments de Monte Carlo
    cursor.execute("""
        CREATE TABLE IF NOT EXISTS experiments (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            run_id INTEGER REFERENCES runs(id),
            pairs INTEGER,
            inits INTEGER,
            tolerance REAL,
            mismatches INTEGER,
            empirical_probability REAL,
            pair_fraction REAL,
            non_convergent INTEGER,
            created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
        )
    """)

    conn.commit()
    conn.close()


def log_run(
    command: str,
    n: Optional[int] = None,
    model: str = "",
    seed: Optional[int] = None,
    converged: Optional[bool] = None,
    steps: Optional[int] = None,
    residual: Optional[float] = None,
    output: str = "",
    db_path: Path = DB_PATH,
) -> int:
    """Registra una execució i en retorna l'id."""
    init_db(db_path)
    conn = sqlite3.connect(db_path)
    cursor = conn.cursor()

    cursor.execute("""
        INSERT INTO runs (command, n, model, seed, converged, steps, residual, output)
        VALUES (?, ?, ?, ?, ?, ?, ?, ?)
    """, (command, n, model, seed, None if converged is None else int(converged),
          steps, residual, str(output)))
    run_id = cursor.lastrowid

    conn.commit()
    conn.close()
    return run_id


def log_experiment(run_id: int, experiment, db_path: Path = DB_PATH):
    """Desa el resum d'un UniquenessExperiment associat a una execució."""
    init_db(db_path)
    conn = sqlite3.connect(db_path)
    cursor = conn.cursor()

    cursor.execute("""
        INSERT INTO experiments (run_id, pairs, inits, tolerance, mismatches,
                                 empirical_probability, pair_fraction, non_convergent)
        VALUES (?, ?, ?, ?, ?, ?, ?, ?)
    """, (run_id, experiment.pair_count, experiment.init_count, experiment.tolerance,
          experiment.mismatches, experiment.empirical_probability, experiment.pair_fraction,
          len(experiment.non_convergent)))

    conn.commit()
    conn.close()


def get_run_stats(db_path: Path = DB_PATH, limit: int = 10) -> Dict:
    """Obté estadístiques globals del registre."""
    init_db(db_path)
    conn = sqlite3.connect(db_path)
    cursor = conn.cursor()

    # Per ordre
    cursor.execute("""
        SELECT command,
               COUNT(*) as total,
               SUM(CASE WHEN converged = 1 THEN 1 ELSE 0 END) as converged,
               AVG(steps) as avg_steps
        FROM runs
        GROUP BY command
        ORDER BY total DESC
    """)
    by_command = cursor.fetchall()

    # Últimes execucions
    cursor.execute("""
        SELECT id, command, n, model, seed, converged, steps, residual, output, created_at
        FROM runs
        ORDER BY id DESC
        LIMIT ?
    """, (limit,))
    recent = cursor.fetchall()

    cursor.execute("SELECT COUNT(*), SUM(mismatches) FROM experiments")
    experiments = cursor.fetchone()

    cursor.execute("""
        SELECT run_id, empirical_probability, pair_fraction
        FROM experiments
        ORDER BY id DESC
        LIMIT ?
    """, (limit,))
    recent_experiments = cursor.fetchall()

    conn.close()

    return {
        "total_runs": sum(row[1] for row in by_command),
        "total_experiments": experiments[0] or 0,
        "total_mismatches": experiments[1] or 0,
        "recent_experiments": [
            {"run_id": row[0], "empirical_probability": row[1], "pair_fraction": row[2]}
            for row in recent_experiments
        ],
        "by_command": [
            {
                "command": row[0],
                "runs": row[1],
                "converged": row[2],
                "avg_steps": row[3]
            }
            for row in by_command
        ],
        "recent_runs": [
            {
                "id": row[0],
                "command": row[1],
                "n": row[2],
                "model": row[3],
                "seed": row[4],
                "converged": None if row[5] is None else bool(row[5]),
                "steps": row[6],
                "residual": row[7],
                "output": row[8],
                "created_at": row[9]
            }
            for row in recent
        ]
    }


def get_recent_runs(command: Optional[str] = None, db_path: Path = DB_PATH) -> List[Dict]:
    """Execucions d'una ordre concreta (o totes)."""
    stats = get_run_stats(db_path, limit=1000)
    return [r for r in stats["recent_runs"] if command is None or r["command"] == command]
