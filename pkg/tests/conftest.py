def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = str(getattr(rep, "nodeid", ""))
            if ("test_acceptance.py::" in nodeid
                    and getattr(rep, "when", "") == "call"):
                rows[nodeid.split("::")[-1]] = outcome == "passed"
    if rows:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name in sorted(rows):
            status = "PASS" if rows[name] else "FAIL"
            terminalreporter.write_line(f"{status}  {name}")
