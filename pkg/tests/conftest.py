import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", deadline=None, max_examples=15, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


_CRITERIA = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    entry = _CRITERIA.setdefault(props["criterion"], {"ok": True, "seconds": None})
    if report.failed:
        entry["ok"] = False
    if "seconds" in props:
        entry["seconds"] = props["seconds"]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split()[0])):
        entry = _CRITERIA[label]
        number, title = label.split(" ", 1)
        timing = "" if entry["seconds"] is None else f" ({entry['seconds']:.2f} s)"
        terminalreporter.write_line(f"criterion {number}: {'PASS' if entry['ok'] else 'FAIL'}  {title}{timing}")
