import os
from pathlib import Path

from dotenv import load_dotenv

dotenv_path = Path(Path(__file__).parent) / "../../.env"
load_dotenv(dotenv_path)

DEFAULT_ALPHA = 0.5
DEFAULT_IC_PROBABILITY = 0.15
DEFAULT_MC_SAMPLES = 10_000
DEFAULT_REPLICATES = 50
DEFAULT_EXECUTIONS = 10
DEFAULT_BUDGET = 3

DEFAULT_SEED = int(os.environ.get("NETCLOAK_SEED", "0"))
LOG_LEVEL = os.environ.get("NETCLOAK_LOG_LEVEL", "INFO").upper()

# Monte Carlo samples evaluated per seed stream.
MC_CHUNK_SIZE = 1_000
# DICE trajectories are aggregated on 0, 10, ..., 100 percent of completed rounds.
PCT_BUCKETS = 10

LOG_FORMAT = "%(asctime)s:%(levelname)s:%(name)s: %(message)s"
