"""
Report serialization utilities: structured text, CSV tables and JSON files.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from .numerics import format_number

logger = logging.getLogger(__name__)

class ReportWriter:
    """Handles deterministic rendering and storage of bound, constant and verification reports."""

    def __init__(self, digits: int = 12):
        """
        Initialize report writer.

        Args:
            digits: Significant digits for printed floats
        """
        self.digits = digits
        self.float_format = f"%.{digits}g"

    def _render_value(self, value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return format_number(value, self.digits)
        if isinstance(value, (list, tuple)):
            return "[" + ", ".join(self._render_value(v) for v in value) + "]"
        return str(value)

    def render_key_values(self, mapping: Dict[str, Any], indent: int = 0) -> str:
        """
        Render a (possibly nested) mapping as ``key: value`` lines.

        Args:
            mapping: Report fields in output order
            indent: Indentation for nested sections

        Returns:
            Structured text, one field per line
        """
        lines = []
        pad = "  " * indent
        for key, value in mapping.items():
            if isinstance(value, dict):
                lines.append(f"{pad}{key}:")
                lines.append(self.render_key_values(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {self._render_value(value)}")
        return "\n".join(line for line in lines if line)

    def to_plain(self, payload: Any) -> Any:
        """Convert numpy scalars and tuples into JSON-native values."""
        if isinstance(payload, dict):
            return {str(k): self.to_plain(v) for k, v in payload.items()}
        if isinstance(payload, (list, tuple)):
            return [self.to_plain(v) for v in payload]
        if hasattr(payload, "item") and not isinstance(payload, (str, bytes)):
            return payload.item()
        return payload

    def render_json(self, payload: Dict[str, Any]) -> str:
        """Render a payload as sorted, indented JSON."""
        return json.dumps(self.to_plain(payload), indent=2, sort_keys=True)

    def render_csv(self, rows: List[Dict[str, Any]], columns: Sequence[str]) -> str:
        """
        Render rows as CSV with a header row and fixed float precision.

        Args:
            rows: Row dictionaries
            columns: Column order

        Returns:
            CSV text
        """
        df = pd.DataFrame(rows, columns=list(columns))
        return df.to_csv(index=False, float_format=self.float_format, lineterminator="\n")

    def save_to_csv(self, rows: List[Dict[str, Any]], filepath: str,
                    columns: Sequence[str]) -> str:
        """
        Save rows to a CSV file.

        Args:
            rows: Row dictionaries
            filepath: Output path
            columns: Column order

        Returns:
            Path to saved file
        """
        try:
            self._ensure_parent(filepath)
            with open(filepath, 'w', encoding='utf-8', newline='') as f:
                f.write(self.render_csv(rows, columns))
            logger.info(f"Saved {len(rows)} rows to {filepath}")
            return filepath
        except Exception as e:
            logger.error(f"Error saving CSV: {e}")
            raise

    def save_to_json(self, payload: Dict[str, Any], filepath: str) -> str:
        """
        Save a report payload to a JSON file.

        Args:
            payload: Report dictionary
            filepath: Output path

        Returns:
            Path to saved file
        """
        try:
            self._ensure_parent(filepath)
            with open(filepath, 'w', encoding='utf-8') as f:
                f.write(self.render_json(payload))
                f.write("\n")
            logger.info(f"Saved report to {filepath}")
            return filepath
        except Exception as e:
            logger.error(f"Error saving JSON: {e}")
            raise

    def load_from_csv(self, filepath: str) -> List[Dict[str, Any]]:
        """
        Load rows from a CSV file.

        Args:
            filepath: Path to CSV file

        Returns:
            List of row dictionaries
        """
        try:
            df = pd.read_csv(filepath)
            return df.to_dict('records')
        except Exception as e:
            logger.error(f"Error loading CSV: {e}")
            raise

    def load_from_json(self, filepath: str) -> Dict[str, Any]:
        """
        Load a JSON report.

        Args:
            filepath: Path to JSON file

        Returns:
            Report dictionary
        """
        try:
            with open(filepath, 'r', encoding='utf-8') as f:
                return json.load(f)
        except Exception as e:
            logger.error(f"Error loading JSON: {e}")
            raise

    @staticmethod
    def _ensure_parent(filepath: str) -> None:
        parent: Optional[str] = os.path.dirname(filepath)
        if parent:
            os.makedirs(parent, exist_ok=True)
