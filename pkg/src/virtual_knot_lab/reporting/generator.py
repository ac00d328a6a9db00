import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from jinja2 import Template

from virtual_knot_lab.config.settings import get_settings
from virtual_knot_lab.core.exceptions import ReportGenerationError
from virtual_knot_lab.core.logger import setup_logger

logger = setup_logger(__name__)

HTML_TEMPLATE = """
<!DOCTYPE html>
<html>
<head>
    <title>{{ title }}</title>
    <style>
        body { font-family: sans-serif; margin: 2rem; background: #f4f4f9; }
        .card { background: white; padding: 1.5rem; margin-bottom: 1rem; border-radius: 8px; box-shadow: 0 2px 4px rgba(0,0,0,0.1); }
        .pass { color: green; }
        .fail { color: red; }
        pre { background: #eee; padding: 10px; border-radius: 4px; overflow-x: auto; white-space: pre-wrap; }
    </style>
</head>
<body>
    <h1>{{ title }}</h1>
    <p>Generated: {{ timestamp }}</p>
    {% if status is not none %}
    <p class="{{ 'pass' if status else 'fail' }}">{{ 'PASS' if status else 'FAIL' }}</p>
    {% endif %}
    {% for key, value in data.items() %}
    <div class="card">
        <h2>{{ key }}</h2>
        <pre>{{ value | tojson(indent=2) }}</pre>
    </div>
    {% endfor %}
</body>
</html>
"""


class ReportGenerator:
    """Writes verification and discrepancy reports under REPORT_OUTPUT_DIR."""

    def __init__(self, output_dir: Optional[Path] = None):
        self.output_dir = Path(output_dir or get_settings().REPORT_OUTPUT_DIR)

    def _path(self, prefix: str, suffix: str, filename: Optional[str]) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        if not filename:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filename = f"{prefix}_{timestamp}.{suffix}"
        return self.output_dir / filename

    def generate_json_report(self, data: Dict[str, Any], prefix: str = "report",
                             filename: Optional[str] = None) -> Path:
        filepath = self._path(prefix, "json", filename)
        try:
            with open(filepath, "w") as f:
                json.dump(data, f, indent=4, default=str)
        except (OSError, TypeError) as e:
            logger.error(f"Failed to generate report: {e}")
            raise ReportGenerationError(f"cannot write {filepath}: {e}") from e
        logger.info(f"Report generated at {filepath}")
        return filepath

    def generate_html_report(self, data: Dict[str, Any], title: str, prefix: str = "report",
                             status: Optional[bool] = None, filename: Optional[str] = None) -> Path:
        filepath = self._path(prefix, "html", filename)
        try:
            html = Template(HTML_TEMPLATE).render(
                title=title,
                timestamp=datetime.now().isoformat(timespec="seconds"),
                status=status,
                data=json.loads(json.dumps(data, default=str)),
            )
            filepath.write_text(html, encoding="utf-8")
        except OSError as e:
            logger.error(f"Failed to generate report: {e}")
            raise ReportGenerationError(f"cannot write {filepath}: {e}") from e
        logger.info(f"HTML report generated at {filepath}")
        return filepath
