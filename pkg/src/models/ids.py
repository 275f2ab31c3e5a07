from src.tools.typing import WrappedInt


class VertexId(WrappedInt):
    pass
