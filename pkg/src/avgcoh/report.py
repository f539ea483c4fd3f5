"""Pass/fail reports with counterexample payloads.

A report is an ordered list of named checks.  Verification routines add one
entry per failed identity (so an empty report means valid); command-line
drivers add summary entries on top.  Rendering is deterministic: same checks
in, same bytes out.
"""


class CheckItem:
    __slots__ = ("key", "ok", "detail")

    def __init__(self, key, ok, detail=""):
        self.key = key
        self.ok = ok
        self.detail = detail

    def render(self):
        mark = "ok" if self.ok else "FAIL"
        if self.detail:
            return "%-4s %s: %s" % (mark, self.key, self.detail)
        return "%-4s %s" % (mark, self.key)


class Report:
    def __init__(self, title=""):
        self.title = title
        self.items = []

    def add(self, key, ok, detail=""):
        self.items.append(CheckItem(key, ok, detail))

    def fail(self, key, detail=""):
        self.add(key, False, detail)

    def note(self, key, detail=""):
        self.add(key, True, detail)

    def extend(self, other, prefix=""):
        for it in other.items:
            self.items.append(CheckItem(prefix + it.key, it.ok, it.detail))

    @property
    def passed(self):
        return all(it.ok for it in self.items)

    @property
    def failures(self):
        return [it for it in self.items if not it.ok]

    def render(self):
        lines = []
        if self.title:
            lines.append(self.title)
        lines.extend(it.render() for it in self.items)
        lines.append("result: %s" % ("pass" if self.passed else "fail"))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "Report(%r, %d items, %s)" % (
            self.title, len(self.items), "pass" if self.passed else "fail")
