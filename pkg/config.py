"""
Configuració de socialpower.
Valors per defecte de toleràncies, límits d'iteració, paral·lelisme i rutes.
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Carregar variables d'entorn
load_dotenv()

# Paths del projecte
BASE_DIR = Path(__file__).parent
OUTPUT_DIR = Path(os.getenv("SOCIALPOWER_OUTPUT_DIR", BASE_DIR / "output"))
DB_PATH = Path(os.getenv("SOCIALPOWER_DB", BASE_DIR / "data" / "socialpower.db"))

# Toleràncies (norma l1)
ROW_SUM_TOL = 1e-12  # estocasticitat per files de C i de W
SIMPLEX_TOL = 1e-12  # suma de components d'un PowerVector
SIMPLEX_RENORM_TOL = 1e-14  # per sota d'això no es renormalitza
CONTROL_TOL = 1e-10  # estocasticitat per files de V
DEFAULT_TOL = float(os.getenv("SOCIALPOWER_TOL", "1e-12"))
SOLVED_RESIDUAL = 1e-10  # un EquilibriumReport només és "solved" per sota d'això

# Límits d'iteració
MAX_ISSUES = int(float(os.getenv("SOCIALPOWER_MAX_ISSUES", "1e5")))  # bucles externs de poder
MAX_INNER = int(float(os.getenv("SOCIALPOWER_MAX_INNER", "1e6")))  # bucles FJ / poder percebut

# Iteració de punt fix
DAMPING_FACTOR = 0.5
OSCILLATION_WINDOW = 50  # passos consecutius amb residu no monòton

# Guarda per a theta petit a la forma tancada
SMALL_THETA = 1e-6

# Monte Carlo
MATCH_TOLERANCE = 1e-8  # radi l1 per a "mateix equilibri"
DESK_PAIRS = 200
DESK_INITS = 200

# Paral·lelisme (-1 = tots els nuclis, com joblib)
THREADS = int(os.getenv("SOCIALPOWER_THREADS", "-1"))

# Logging
LOG_LEVEL = os.getenv("SOCIALPOWER_LOG_LEVEL", "WARNING")


def validate_config():
    """Valida que la configuració sigui correcta."""
    errors = []

    if not 0 < DEFAULT_TOL < 1:
        errors.append(f"SOCIALPOWER_TOL fora de rang: {DEFAULT_TOL}")

    if MAX_ISSUES < 1 or MAX_INNER < 1:
        errors.append("SOCIALPOWER_MAX_ISSUES i SOCIALPOWER_MAX_INNER han de ser >= 1")

    if THREADS == 0:
        errors.append("SOCIALPOWER_THREADS no pot ser 0")

    if errors:
        raise ValueError("Errors de configuració:\n" + "\n".join(errors))

    # Crear directoris si no existeixen
    for dir_path in [OUTPUT_DIR, DB_PATH.parent]:
        dir_path.mkdir(parents=True, exist_ok=True)

    return True
