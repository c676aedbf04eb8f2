from enum import Enum
from typing import Optional
import threading

from rich.console import Console
from rich.style import Style
from rich.text import Text


class RunState(str, Enum):
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


_MARKS = {
    RunState.RUNNING: ("⋯", Style(color="yellow")),
    RunState.DONE: ("✓", Style(color="green", bold=True)),
    RunState.FAILED: ("✗", Style(color="red", bold=True)),
}


class RunProgress:
    """Status lines on stderr for simulations and their replicas; callable from worker threads."""

    def __init__(self, console: Optional[Console] = None):
        # stdout carries reports
        self.console = console or Console(stderr=True)
        self.lock = threading.Lock()
        self.active = False
        self.quiet = False
        self._last: dict[tuple[str, Optional[str]], tuple[RunState, str]] = {}

    def start(self, quiet: bool = False):
        with self.lock:
            self.active = True
            self.quiet = quiet
            self._last.clear()

    def stop(self):
        with self.lock:
            self.active = False
            self._last.clear()

    def update_status(self, task_name: str, detail: Optional[str], state: RunState, message: str = ""):
        """Print a line for (task, detail) unless it repeats the last one."""
        with self.lock:
            if not self.active:
                return
            key = (task_name, detail)
            entry = (state, message)
            if self._last.get(key) == entry:
                return
            self._last[key] = entry
            if not self.quiet:
                self.console.print(self._render(task_name, detail, state, message))

    @staticmethod
    def _render(task_name: str, detail: Optional[str], state: RunState, message: str) -> Text:
        symbol, style = _MARKS[state]
        line = Text()
        line.append(f"{symbol} ", style=style)
        line.append(f"{task_name:<10}", style=Style(bold=True))
        if detail:
            line.append(f"[{detail}] ", style=Style(color="cyan"))
        line.append(message or state.value, style=style)
        return line


progress = RunProgress()
