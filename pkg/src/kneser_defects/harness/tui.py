"""Report board - interactive browser for a saved verification report, using Textual."""

from __future__ import annotations

import json

from textual.app import App, ComposeResult
from textual.binding import Binding
from textual.containers import Horizontal, ScrollableContainer, Vertical
from textual.widgets import Footer, Header, Input, ListItem, ListView, Static

from kneser_defects.harness.report import (
    STATUS_STYLES,
    Claim,
    Status,
    VerificationReport,
    format_params,
)


class NonFocusableScrollableContainer(ScrollableContainer):
    """ScrollableContainer that cannot receive focus."""

    can_focus = False


def status_badge(status: Status) -> str:
    style = STATUS_STYLES[status]
    return f"[{style}]{status.value[:4].upper():<4}[/]"


class ClaimListItem(ListItem):
    """A list item representing a claim."""

    def __init__(self, claim: Claim) -> None:
        super().__init__()
        self.claim = claim

    def compose(self) -> ComposeResult:
        params = format_params(self.claim.params)
        max_params = 30
        if len(params) > max_params:
            params = params[:max_params - 3] + "..."
        yield Static(f"{status_badge(self.claim.status)} {self.claim.id} [dim]{params}[/]")


class ClaimDetail(Static):
    """Widget showing the details of a selected claim."""

    def __init__(self, *args, **kwargs) -> None:
        super().__init__("", *args, **kwargs)
        self.claim: Claim | None = None

    def show_claim(self, claim: Claim) -> None:
        self.claim = claim
        self.update(self._render_claim(claim))

    def _render_claim(self, c: Claim) -> str:
        lines = [
            f"[bold cyan]{c.id}[/]  {status_badge(c.status)}",
            f"[dim]{format_params(c.params)}[/]",
            "",
            "[bold green]Predicted[/]",
            f"  {json.dumps(c.predicted)}",
            "",
            "[bold yellow]Computed[/]",
        ]
        for key, value in c.computed.items():
            lines.append(f"  {key}: {json.dumps(value)}")
        if c.detail:
            lines += ["", f"[bold magenta]Detail[/] {c.detail}"]
        return "\n".join(lines)

    def clear(self) -> None:
        self.claim = None
        self.update("[dim]Select a claim to view details[/]")


class ReportApp(App):
    """A TUI for browsing the claims of a verification report."""

    CSS = """
    #summary-bar { height: 1; padding: 0 1; background: $surface; }
    #main-container { height: 1fr; }
    #claim-list { width: 2fr; border: round $success; }
    #detail-container { width: 3fr; border: round $primary; padding: 0 1; }
    #search-box { height: auto; display: none; }
    #search-box.visible { display: block; }
    ListView > ListItem { height: 1; padding: 0 1; }
    """

    BINDINGS = [
        Binding("q", "quit", "Quit"),
        Binding("j", "cursor_down", "Down"),
        Binding("k", "cursor_up", "Up"),
        Binding("g", "go_top", "Top"),
        Binding("G", "go_bottom", "Bottom"),
        Binding("/", "search", "Search"),
        Binding("f", "toggle_problems", "Fail/Inconcl."),
        Binding("escape", "clear_search", "Clear", show=False),
        Binding("J", "scroll_detail_down", "Detail↓", show=False),
        Binding("K", "scroll_detail_up", "Detail↑", show=False),
    ]

    def __init__(self, report: VerificationReport) -> None:
        super().__init__()
        self.report = report
        self.problems_only = False
        self.search_term = ""
        self.filtered_claims = self._visible_claims()

    def _visible_claims(self) -> list[Claim]:
        claims = self.report.claims
        if self.problems_only:
            claims = [c for c in claims if c.status is not Status.PASS]
        if self.search_term:
            term = self.search_term.lower()
            claims = [
                c for c in claims
                if term in c.id.lower() or term in format_params(c.params).lower()
            ]
        return claims

    def compose(self) -> ComposeResult:
        yield Header()
        yield Static(self._render_summary_bar(), id="summary-bar")
        with Vertical(id="search-box"):
            yield Input(placeholder="Filter by claim id or params...", id="search-input")
        with Horizontal(id="main-container"):
            with Vertical(id="claim-list"):
                yield ListView(
                    *[ClaimListItem(c) for c in self.filtered_claims],
                    id="list-view"
                )
            with NonFocusableScrollableContainer(id="detail-container"):
                yield ClaimDetail(id="claim-detail")
        yield Footer()

    def _render_summary_bar(self) -> str:
        summary = self.report.summary()
        bar = (f"[bold]{self.report.kind}[/]  "
               f"[green]{summary['pass']} pass[/] │ "
               f"[bold red]{summary['fail']} fail[/] │ "
               f"[yellow]{summary['inconclusive']} inconclusive[/]")
        if self.problems_only:
            bar += "  [reverse] fail/inconclusive only [/]"
        return bar

    def on_mount(self) -> None:
        self.title = f"kneser-defects {self.report.kind} report"
        list_view = self.query_one("#list-view", ListView)
        list_view.focus()
        if self.filtered_claims:
            list_view.index = 0
            self._show_selected_claim()
        else:
            self.query_one("#claim-detail", ClaimDetail).clear()

    def on_list_view_selected(self, event: ListView.Selected) -> None:
        self._show_selected_claim()

    def on_list_view_highlighted(self, event: ListView.Highlighted) -> None:
        self._show_selected_claim()

    def on_input_changed(self, event: Input.Changed) -> None:
        if event.input.id == "search-input":
            self.search_term = event.value
            self._apply_filter()

    def on_input_submitted(self, event: Input.Submitted) -> None:
        """Enter in the filter box returns focus to the list."""
        if event.input.id == "search-input":
            self.query_one("#search-box").remove_class("visible")
            self.query_one("#list-view", ListView).focus()

    def _select_first_item(self) -> None:
        list_view = self.query_one("#list-view", ListView)
        list_view.focus()
        if self.filtered_claims and list_view.children:
            # Reset index to force highlight update
            list_view.index = None
            list_view.index = 0
            self._show_selected_claim()

    def _show_selected_claim(self) -> None:
        list_view = self.query_one("#list-view", ListView)
        detail = self.query_one("#claim-detail", ClaimDetail)
        item = list_view.highlighted_child
        if isinstance(item, ClaimListItem):
            detail.show_claim(item.claim)
        else:
            detail.clear()

    def _apply_filter(self) -> None:
        self.filtered_claims = self._visible_claims()

        list_view = self.query_one("#list-view", ListView)
        list_view.clear()
        for c in self.filtered_claims:
            list_view.append(ClaimListItem(c))

        if self.filtered_claims:
            self.call_after_refresh(self._select_first_item)
        else:
            self.query_one("#claim-detail", ClaimDetail).clear()

    def action_cursor_down(self) -> None:
        self.query_one("#list-view", ListView).action_cursor_down()

    def action_cursor_up(self) -> None:
        self.query_one("#list-view", ListView).action_cursor_up()

    def action_go_top(self) -> None:
        if self.filtered_claims:
            self.query_one("#list-view", ListView).index = 0

    def action_go_bottom(self) -> None:
        if self.filtered_claims:
            self.query_one("#list-view", ListView).index = len(self.filtered_claims) - 1

    def action_search(self) -> None:
        self.query_one("#search-box").add_class("visible")
        self.query_one("#search-input", Input).focus()

    def action_clear_search(self) -> None:
        search_box = self.query_one("#search-box")
        search_input = self.query_one("#search-input", Input)
        if search_box.has_class("visible"):
            search_box.remove_class("visible")
            search_input.value = ""
            self.search_term = ""
            self._apply_filter()
            self.query_one("#list-view", ListView).focus()

    def action_toggle_problems(self) -> None:
        """Show only failed and inconclusive claims (f), or everything again."""
        self.problems_only = not self.problems_only
        self.query_one("#summary-bar", Static).update(self._render_summary_bar())
        self._apply_filter()

    def action_scroll_detail_down(self) -> None:
        self.query_one("#detail-container", ScrollableContainer).scroll_down()

    def action_scroll_detail_up(self) -> None:
        self.query_one("#detail-container", ScrollableContainer).scroll_up()


def run_app(report: VerificationReport) -> None:
    """Run the report board."""
    ReportApp(report).run()
