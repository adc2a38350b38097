"""Published reference values used by fits and tests."""
from .table1 import TABLE1, TABLE1_FIELD, TABLE1_SIZES, Table1Entry, get_entry

__all__ = ["TABLE1", "TABLE1_FIELD", "TABLE1_SIZES", "Table1Entry", "get_entry"]
