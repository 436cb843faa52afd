import sys
from pathlib import Path

# make helpers/oracles/format_parsers importable regardless of invocation dir
sys.path.insert(0, str(Path(__file__).resolve().parent))
