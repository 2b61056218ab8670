from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from portfix.bench.dataset import SUITE_PATH, golden_case, load_suite  # noqa: E402
from portfix.bench.simulate import SimulatedModel  # noqa: E402


@pytest.fixture(scope="session")
def suite():
    return load_suite(SUITE_PATH)


@pytest.fixture(scope="session")
def scriptinfo_case():
    return golden_case("golden_scriptinfo")


@pytest.fixture(scope="session")
def alloc_case():
    return golden_case("golden_alloc")


@pytest.fixture
def simulated():
    return SimulatedModel()


MINI = {
    "api.h": """\
#ifndef API_H
#define API_H
#define LIMIT 16
typedef struct item_S { int value; } item_T;
extern int counter;
int get_value(item_T *item, int *error);
char *make_name(const char *base);
#endif
""",
    "api.c": """\
#include "api.h"
int counter = 0;

int get_value(item_T *item, int *error)
{
  if (item == NULL) {
    *error = 1;
    return 0;
  }
  return item->value;
}

char *make_name(const char *base)
{
  return strdup(base);
}
""",
    "use.c": """\
#include "api.h"

int total(item_T *items, int n)
{
  int sum = 0;
  int error = 0;
  for (int i = 0; i < n && i < LIMIT; i++) {
    sum += get_value(&items[i], &error);
  }
  counter++;
  return sum;
}
""",
}


@pytest.fixture
def mini_texts():
    return dict(MINI)


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion after the run


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and report.passed:
        return
    number, title = mark.args
    measured = "; ".join(str(v) for k, v in item.user_properties if k == "measured")
    prev = item.config._criteria.get(number)
    ok = report.passed and (prev is None or prev[0])
    item.config._criteria[number] = (ok, title, measured or (prev[2] if prev else ""))


def pytest_terminal_summary(terminalreporter, config):
    criteria = getattr(config, "_criteria", {})
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(criteria):
        ok, title, measured = criteria[number]
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
        terminalreporter.write_line(line + (f" [{measured}]" if measured else ""))
