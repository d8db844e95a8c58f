from django.core.management.base import CommandError
from rest_framework.renderers import JSONRenderer

from .exceptions import BudgetExceeded, EngineError, ParseError


class StatsByFormatMixin:
    stats_serializer_class = None
    renderer_map = {
        "json": "render_json",
        "text": "render_text",
    }

    def get_renderer(self, options: dict):
        stats_format = "json" if options.get("stats_json") else "text"

        return getattr(self, self.renderer_map[stats_format])

    def emit_stats(self, stats: dict, options: dict) -> None:
        serializer = self.stats_serializer_class(stats)
        self.stdout.write(self.get_renderer(options)(serializer.data))

    def render_json(self, data: dict) -> str:
        return JSONRenderer().render(data).decode()

    def render_text(self, data: dict) -> str:
        lines = []
        for key, value in data.items():
            if isinstance(value, list):
                value = " ".join(str(item) for item in value)
            lines.append(f"{key} {value}")

        return "\n".join(lines)


class EngineCommandMixin:
    """Turns engine errors into command errors carrying the documented exit codes."""

    exit_code_map = {
        ParseError: 2,
        BudgetExceeded: 3,
    }
    default_exit_code = 1

    def run_engine(self, operation, *args, **kwargs):
        try:
            return operation(*args, **kwargs)
        except EngineError as exc:
            raise CommandError(exc.detail, returncode=self.exit_code_for(exc)) from exc

    def exit_code_for(self, exc: EngineError) -> int:
        for error_class, code in self.exit_code_map.items():
            if isinstance(exc, error_class):
                return code

        return self.default_exit_code
