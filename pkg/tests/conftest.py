import sys
from pathlib import Path

# Test helpers (batch_oracle, stream_gen) live next to the tests.
sys.path.insert(0, str(Path(__file__).parent))
