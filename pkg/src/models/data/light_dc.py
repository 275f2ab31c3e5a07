from dataclasses import dataclass, fields, replace
from typing import TypeVar

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from src.tools.serialization import SimpleDict, simplify_type, un_simplify_type


@dataclass(frozen=True)
class LightDc:
    """
    A row of an LdcRepo: an id plus fields of simple types (ints, enums, wrapped ids), so that it maps
    onto one dataframe row and one JSON row.
    """

    id: int

    def to_simple_dict(self) -> SimpleDict:
        return {f.name: simplify_type(x=getattr(self, f.name)) for f in fields(self)}

    @classmethod
    def get_keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]  # noqa

    @classmethod
    def from_simple_dict(cls, simple_dict: SimpleDict) -> Self:
        missing = [k for k in cls.get_keys() if k not in simple_dict]
        if missing:
            raise KeyError(f"{cls.__name__} row {simple_dict} lacks {', '.join(missing)}")
        return cls(**{f.name: un_simplify_type(x=simple_dict[f.name], t=f.type) for f in fields(cls)})  # noqa

    def with_id(self, new_id: int) -> Self:
        return replace(self, id=type(self.id)(new_id))


T_LightDc = TypeVar("T_LightDc", bound=LightDc)
