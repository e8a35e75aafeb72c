"""Command-line interface.

Exit codes: 0 ok, 1 verification mismatch, 2 format error or empty input,
3 alphabet mismatch, 4 non-unique terminator, 5 invalid transform,
6 engine not applicable to the scheme.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import general, local, pm
from .base import (CabwtError, InvalidSymbolError, InvalidTransformError, MissingTerminatorError,
                   NotApplicableError, OracleTooLargeError, SchemeFormatError)
from .container import ContainerFormatError, pack, unpack, write_atomic
from .oracle import oracle_min_runs, oracle_transform
from .orderings import Alphabet, abwt, bwt, escape_symbols, preset, scheme_from_text, scheme_to_text, unescape_symbols
from .rank import histogram, run_count
from .runs import minimize
from .suffix_index import transform

TERMINATOR = b"\x00"
EXIT_MISMATCH, EXIT_FORMAT, EXIT_ALPHABET, EXIT_TERMINATOR, EXIT_INVALID, EXIT_ENGINE = 1, 2, 3, 4, 5, 6
ORACLE_VERIFY_LIMIT = 4096


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_FORMAT, f"cannot read {path}: {exc.strerror}") from None


def _emit(path, data):
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        write_atomic(path, data)


def _load_text(path, no_terminator):
    text = _read(path)
    if not text:
        raise CliError(EXIT_FORMAT, "empty input")
    if not no_terminator:
        if TERMINATOR in text:
            raise CliError(EXIT_TERMINATOR, "input already contains the 0x00 terminator; use --no-terminator")
        text += TERMINATOR
    elif text.count(text[-1:]) != 1:
        raise CliError(EXIT_TERMINATOR, "last byte is not a unique terminator")
    return text


def _load_scheme(arg, text):
    if os.path.exists(arg):
        try:
            return scheme_from_text(_read(arg).decode("utf-8"))
        except UnicodeDecodeError:
            raise CliError(EXIT_FORMAT, "scheme file is not UTF-8") from None
    return preset(arg, Alphabet.from_text(text))


def _load_container(path):
    return unpack(_read(path))


def _invert(box, engine):
    if engine == "auto":
        try:
            local.local_view(box.scheme)
            engine = "local"
        except NotApplicableError:
            try:
                pm.pm_view(box.scheme)
                engine = "pm"
            except NotApplicableError:
                engine = "general"
    fn = {"local": local.invert_local, "pm": pm.invert_pm, "general": general.invert}[engine]
    text = fn(box.L, box.I, box.scheme)
    if box.terminated:
        if text[-1:] != TERMINATOR or text.count(TERMINATOR) != 1:
            raise InvalidTransformError("recovered text does not end with the terminator")
        text = text[:-1]
    return text


def _pattern(raw):
    try:
        pat = unescape_symbols(raw)
    except SchemeFormatError as exc:
        raise CliError(EXIT_FORMAT, str(exc)) from None
    if not pat:
        raise CliError(EXIT_FORMAT, "empty pattern")
    return pat


def _absent(box, pat):
    return any(b not in box.scheme.alphabet.symbols for b in pat)


def cmd_transform(args):
    text = _load_text(args.input, args.no_terminator)
    scheme = _load_scheme(args.scheme, text)
    if args.engine == "oracle":
        out = oracle_transform(text, scheme)
    else:
        out = transform(text, scheme)
    _emit(args.output, pack(scheme, out.I, out.L, not args.no_terminator))


def cmd_invert(args):
    box = _load_container(args.input)
    _emit(args.output, _invert(box, args.engine))


def cmd_count(args):
    box = _load_container(args.index)
    pat = _pattern(args.pattern)
    if _absent(box, pat):
        print("0 0")
        return
    engine = args.engine
    if engine == "auto":
        try:
            idx = local.build_local(box.L, box.I, box.scheme)
            r = local.count_local(idx, pat)
        except NotApplicableError:
            try:
                r = pm.count_pm(pm.PmIndex(box.L, box.I, box.scheme), pat)
            except NotApplicableError:
                r = general.count(general.GeneralIndex(box.L, box.I, box.scheme), pat)
    elif engine == "local":
        r = local.count_local(local.build_local(box.L, box.I, box.scheme), pat)
    elif engine == "pm":
        r = pm.count_pm(pm.PmIndex(box.L, box.I, box.scheme), pat)
    else:
        r = general.count(general.GeneralIndex(box.L, box.I, box.scheme), pat)
    print(f"{r.b} {r.length}")


def cmd_locate(args):
    box = _load_container(args.index)
    pat = _pattern(args.pattern)
    idx = local.build_local(box.L, box.I, box.scheme)
    if _absent(box, pat):
        print("0 0")
        return
    limit = None if args.limit is None else 1 + max(args.limit, 0)
    r, positions = local.locate(idx, pat, limit)
    print(" ".join(str(v) for v in (r.b, r.length, *positions)))


def cmd_minruns(args):
    text = _load_text(args.input, args.no_terminator)
    res = minimize(text)
    alpha = Alphabet.from_text(text)
    runs_bwt = run_count(transform(text, bwt(alpha)).L)
    runs_abwt = run_count(transform(text, abwt(alpha)).L)
    line = f"Opt={res.opt} runs_bwt={runs_bwt} runs_abwt={runs_abwt}"
    if args.verify:
        try:
            opt, _ = oracle_min_runs(text, budget=args.budget)
        except OracleTooLargeError:
            line += " verified=skipped"
        else:
            if opt != res.opt:
                print(line + f" verified=no oracle={opt}")
                raise CliError(EXIT_MISMATCH, "oracle disagrees with the dynamic program")
            line += " verified=yes"
    print(line)
    if args.emit_scheme:
        write_atomic(args.emit_scheme, scheme_to_text(res.scheme).encode("utf-8"))


def cmd_stats(args):
    box = _load_container(args.input)
    hist = histogram(box.L)
    alpha = box.scheme.alphabet
    try:
        size = local.build_local(box.L, box.I, box.scheme).nbytes()
    except NotApplicableError:
        size = general.GeneralIndex(box.L, box.I, box.scheme).seq.nbytes()
    print(f"runs={run_count(box.L)}")
    print(f"n={len(box.L)}")
    print(f"sigma={alpha.size}")
    print(f"I={box.I}")
    print(f"kind={box.scheme.kind}")
    print("hist=" + ",".join(f"{escape_symbols(bytes([s]))}:{c}" for s, c in sorted(hist.items())))
    print(f"index_bytes={size}")


def cmd_verify(args):
    text = _load_text(args.input, args.no_terminator)
    scheme = _load_scheme(args.scheme, text)
    out = transform(text, scheme)
    checks = []
    if len(text) <= ORACLE_VERIFY_LIMIT:
        checks.append(("oracle", oracle_transform(text, scheme) == out))
    box = unpack(pack(scheme, out.I, out.L, not args.no_terminator))
    original = text if args.no_terminator else text[:-1]
    checks.append(("roundtrip", _invert(box, "auto") == original))
    print(" ".join(f"{name}={'ok' if good else 'FAIL'}" for name, good in checks))
    if not all(good for _, good in checks):
        raise CliError(EXIT_MISMATCH, "verification failed")


def build_parser():
    ap = argparse.ArgumentParser(prog="cabwt", description="Context-adaptive Burrows-Wheeler transforms")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="transform a file into a container")
    p.add_argument("--input", required=True)
    p.add_argument("--scheme", default="bwt", help="scheme file or preset: bwt, abwt, pm-parity, posmod:k")
    p.add_argument("--engine", choices=("st", "oracle"), default="st")
    p.add_argument("--output", default="-")
    p.add_argument("--no-terminator", action="store_true",
                   help="input already ends with a unique byte; do not append 0x00")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("invert", help="recover the text from a container")
    p.add_argument("--input", required=True)
    p.add_argument("--engine", choices=("auto", "general", "pm", "local"), default="auto")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("count", help="print the row range 'b l' of a pattern")
    p.add_argument("--index", required=True)
    p.add_argument("--pattern", required=True, help="raw symbols; \\xHH and \\\\ escapes allowed")
    p.add_argument("--engine", choices=("auto", "general", "pm", "local"), default="auto")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("locate", help="print 'b l toehold [more positions]' (local schemes)")
    p.add_argument("--index", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--limit", type=int, default=0, help="further occurrences to report after the toehold")
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("minruns", help="minimum run count over all schemes")
    p.add_argument("--input", required=True)
    p.add_argument("--no-terminator", action="store_true")
    p.add_argument("--emit-scheme", metavar="FILE")
    p.add_argument("--verify", action="store_true", help="cross-check with exhaustive search")
    p.add_argument("--budget", type=int, default=10 ** 6, help="assignment budget for --verify")
    p.set_defaults(func=cmd_minruns)

    p = sub.add_parser("stats", help="run count, histogram and index size of a container")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check the transform against the oracle and a round trip")
    p.add_argument("--input", required=True)
    p.add_argument("--scheme", default="bwt")
    p.add_argument("--no-terminator", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"cabwt: {exc}", file=sys.stderr)
        return exc.code
    except (ContainerFormatError, SchemeFormatError) as exc:
        print(f"cabwt: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except InvalidSymbolError as exc:
        print(f"cabwt: alphabet mismatch: {exc}", file=sys.stderr)
        return EXIT_ALPHABET
    except MissingTerminatorError as exc:
        print(f"cabwt: {exc}", file=sys.stderr)
        return EXIT_TERMINATOR
    except InvalidTransformError as exc:
        print(f"cabwt: invalid transform: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotApplicableError as exc:
        print(f"cabwt: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except CabwtError as exc:
        print(f"cabwt: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    return 0


if __name__ == "__main__":
    sys.exit(main())
