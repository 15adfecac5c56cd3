#!/usr/bin/env python3
"""Generate docs/octica.1 from the argparse definitions, so the manual page
and --help never drift apart."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from octica.cli import build_parser

OUT = os.path.join(os.path.dirname(__file__), "..", "docs", "octica.1")


def roff_escape(text):
    return text.replace("\\", "\\\\").replace("-", "\\-")


def main():
    parser = build_parser()
    lines = ['.TH OCTICA 1 "" "octica" "User Commands"']
    lines.append(".SH NAME")
    lines.append("octica \\- exact lattice computations for real binary octic "
                 "moduli")
    lines.append(".SH SYNOPSIS")
    lines.append(".B octica")
    lines.append("[\\fIGLOBAL OPTIONS\\fR] \\fICOMMAND\\fR [\\fIOPTIONS\\fR]")
    lines.append(".SH DESCRIPTION")
    lines.append(roff_escape(parser.description))
    lines.append(".SH GLOBAL OPTIONS")
    for action in parser._actions:
        if action.dest in ("help", "command"):
            continue
        flags = ", ".join(action.option_strings)
        lines.append(".TP")
        lines.append(f"\\fB{roff_escape(flags)}\\fR")
        lines.append(roff_escape(action.help or ""))
    lines.append(".SH COMMANDS")
    sub = next(a for a in parser._actions
               if isinstance(a, type(parser._subparsers._group_actions[0])))
    for name, sp in sub.choices.items():
        lines.append(".TP")
        lines.append(f"\\fB{roff_escape(name)}\\fR")
        lines.append(roff_escape(sub._choices_actions and next(
            (c.help for c in sub._choices_actions if c.dest == name), "") or ""))
        for action in sp._actions:
            if action.dest == "help" or not action.option_strings:
                continue
            flags = ", ".join(action.option_strings)
            lines.append(".RS")
            lines.append(f"\\fB{roff_escape(flags)}\\fR  "
                         + roff_escape(action.help or ""))
            lines.append(".RE")
    lines.append(".SH EXIT STATUS")
    lines.append("0 on success, 1 when a verification check fails, 2 on "
                 "configuration or data errors, 3 on internal invariant "
                 "violations.")
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
