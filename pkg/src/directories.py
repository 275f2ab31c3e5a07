from pathlib import Path

root_dir = Path(__file__).parent
problem_cache_dir = root_dir / "problem_cache"
