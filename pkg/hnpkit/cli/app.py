"""``hnpkit`` command line: one group with sub-groups per concern.

Reports go to stdout as JSON (or CSV for tables); diagnostics go to stderr.
Exit codes: 0 decided, 1 usage or input error, 2 budget exceeded.
"""

from __future__ import annotations

import json
import logging
import sys
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import asyncclick as click
from pydantic import BaseModel, ValidationError

from hnpkit.algebraic import (
    UnivarPoly,
    check_witness,
    discriminant,
    make_integral,
    minpoly_sum,
    primitive_element_chain,
    specialize_witness,
    sylvester_resultant,
    witness_from_json,
)
from hnpkit.certificate import (
    bounded_degree_search,
    certificate_from_json,
    certificate_to_json,
    find_certificate,
    verify_certificate,
)
from hnpkit.cli.corpus import SUITE_FIELDS, Corpus, run_corpus_suite, run_corpus_suite_async
from hnpkit.errors import (
    BudgetExceeded,
    DegenerateCaseError,
    InexactDivisionError,
    ParseError,
    PreconditionError,
    UsageError,
)
from hnpkit.groebner import hn_decide, hnp_decide_elimination
from hnpkit.modp import PrimeSamplerConfig, hn_decide_modp, parse_prime_range, prime_density_report
from hnpkit.normalize import normalize_system
from hnpkit.polycore import PolynomialSystem, PrimeField, RationalFunction, parse_field, reduce_mod_p
from hnpkit.reduction import (
    ReductionConfig,
    equisat_experiment,
    error_budget,
    hnp_decide_randomized,
    hnp_decide_randomized_async,
    identity_lemma_check,
)
from hnpkit.sysio import (
    parse_polynomial,
    parse_system,
    render_coefficient,
    render_polynomial,
    render_system,
    to_csv,
    to_json,
)
from hnpkit.utils.output import ensure_output_dir, resolve_output
from hnpkit.utils.settings import Budget, get_settings
from hnpkit.utils.tracing import configure_tracing, flush_tracing
from hnpkit.utils.typing import BudgetReport, DecisionReport, EquisatReport, IdentityLemmaReport, PrimeRecord

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s"

PRIME_FIELDS = list(PrimeRecord.model_fields)


@dataclass
class CliState:
    timing: bool = False
    out: Path | None = None
    budget: Budget = field(default_factory=lambda: get_settings().budget())
    started: float = field(default_factory=time.perf_counter)


def _state() -> CliState:
    return click.get_current_context().find_object(CliState) or CliState()


def _emit(text: str, filename: str | None = None) -> None:
    """Print a report and, with ``--out``, also store it under the output directory."""
    text = text if text.endswith("\n") else text + "\n"
    click.echo(text, nl=False)
    state = _state()
    if state.out is not None and filename:
        target = resolve_output(state.out, filename)
        target.write_text(text)
        logger.info(f"wrote {target}")


def _timed(report: BaseModel) -> BaseModel:
    state = _state()
    if not state.timing or "elapsed_ms" not in type(report).model_fields:
        return report
    elapsed = round((time.perf_counter() - state.started) * 1000, 3)
    return report.model_copy(update={"elapsed_ms": elapsed})


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not ASCII (byte offset {e.start})", 1, 1) from e
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _read_system(path: str) -> PolynomialSystem:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e
    return parse_system(data)


def _read_json(path: str) -> dict[str, Any]:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e.msg} (line {e.lineno})") from e
    if not isinstance(data, dict):
        raise UsageError(f"{path} must hold a JSON object")
    return data


def _names(text: str) -> tuple[str, ...]:
    return tuple(part for part in text.replace(",", " ").split() if part)


def _integers(text: str) -> list[int]:
    try:
        return [int(part) for part in _names(text)]
    except ValueError as e:
        raise UsageError(f"expected comma separated integers, got {text!r}") from e


def _univariate(text: str, params: tuple[str, ...], var: str) -> UnivarPoly:
    """A polynomial in ``var`` whose coefficients are scalars (no params) or ℚ(x) elements."""
    parsed = parse_polynomial(text, params, (var,))
    m = len(params)
    poly = UnivarPoly.from_polynomial(parsed.poly, m)
    if parsed.denominator is not None and not parsed.denominator.is_constant():
        den = parsed.denominator.restrict(list(range(m)))
        return poly.map_coefficients(lambda c: RationalFunction(c, den))
    if parsed.denominator is not None:
        scale = Fraction(1) / Fraction(parsed.denominator.constant_coefficient())
        poly = poly.map_coefficients(lambda c: c.scale(scale))
    if m == 0:
        return poly.map_coefficients(lambda c: c.constant_coefficient())
    return poly


def _render_univariate(p: UnivarPoly, params: tuple[str, ...], var: str) -> str:
    m = len(params)
    return render_polynomial(p.to_polynomial(m + 1, m, range(m)), params + (var,))


def _require_parameter_free(S: PolynomialSystem) -> None:
    if S.m:
        raise UsageError(f"this command needs a parameter-free system (found {S.m} parameters); use 'hnp'")


def _sampler(primes: str, samples: int | None, tau: str, seed: int) -> PrimeSamplerConfig:
    lo, hi = parse_prime_range(primes)
    return PrimeSamplerConfig(lo=lo, hi=hi, samples=samples, tau=tau, seed=seed)


@click.group()
@click.option("--log-level", default=None, help="Logging level for diagnostics on stderr (default HNP_LOG_LEVEL or INFO)")
@click.option("--timing", is_flag=True, help="Include elapsed_ms in reports")
@click.option("--out", "out_dir", default=None, help="Also write reports under this directory")
@click.option("--max-basis-size", type=int, default=None, help="Gröbner basis size cap")
@click.option("--max-terms", type=int, default=None, help="Cap on the terms of any intermediate polynomial")
@click.option("--max-reductions", type=int, default=None, help="Cap on reduction steps")
@click.pass_context
def cli(
    ctx: click.Context,
    log_level: str | None,
    timing: bool,
    out_dir: str | None,
    max_basis_size: int | None,
    max_terms: int | None,
    max_reductions: int | None,
) -> None:
    """Parametric Hilbert Nullstellensatz toolkit."""
    settings = get_settings()
    level = (log_level or settings.log_level).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise click.BadParameter(f"unknown log level {level!r}", param_hint="--log-level")
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)
    configure_tracing(batch=True)
    defaults = settings.budget()
    budget = Budget(
        max_basis_size=max_basis_size or defaults.max_basis_size,
        max_terms=max_terms or defaults.max_terms,
        max_reductions=max_reductions or defaults.max_reductions,
    )
    out = ensure_output_dir(out_dir) if out_dir else None
    ctx.obj = CliState(timing=timing, out=out, budget=budget)


@cli.command("normalize")
@click.argument("file")
@click.option("--text", "text_only", is_flag=True, help="Emit only the normalized system text")
async def normalize_cmd(file: str, text_only: bool) -> int:
    """Rewrite FILE into degree <= 2 with coefficients in {-1, 0, 1}.

    Prints the normalized system together with the variable map as JSON.
    """
    S_norm, nmap = normalize_system(_read_system(file))
    text = render_system(S_norm)
    if text_only:
        _emit(text, "normalized.sys")
    else:
        _emit(to_json({"instance": Path(file).stem, "system": text, "map": nmap.as_dict()}), "normalized.json")
    return 0


@cli.group("hn")
def hn_group() -> None:
    """Decide parameter-free systems."""


@hn_group.command("decide")
@click.argument("file")
@click.option("--field", "field_spec", default="q", help="'q' for the rationals or 'fp:<p>'")
async def hn_decide_cmd(file: str, field_spec: str) -> int:
    S = _read_system(file)
    _require_parameter_free(S)
    field_ = parse_field(field_spec)
    polys = S.cleared().joint()
    if isinstance(field_, PrimeField):
        polys = [reduce_mod_p(p, field_.characteristic) for p in polys]
    answer = hn_decide(polys, field_, _state().budget)
    report = DecisionReport(instance=Path(file).stem, answer=answer.value, oracle="groebner", field=repr(field_))
    _emit(to_json(_timed(report)), "decision.json")
    return 0


@hn_group.command("decide-modp")
@click.argument("file")
@click.option("--primes", default="2..500", show_default=True, help="Inclusive prime range lo..hi")
@click.option("--samples", type=int, default=None, help="Number of primes to sample (default: all)")
@click.option("--tau", default="1/5", show_default=True, help="Density threshold p/q")
@click.option("--seed", type=int, default=None, help="Sampling seed (default HNP_DEFAULT_SEED)")
@click.option("--scaling", type=int, default=None, help="Certificate scaling to test divisibility against")
async def hn_decide_modp_cmd(
    file: str, primes: str, samples: int | None, tau: str, seed: int | None, scaling: int | None
) -> int:
    S = _read_system(file)
    _require_parameter_free(S)
    cfg = _sampler(primes, samples, tau, get_settings().default_seed if seed is None else seed)
    logger.warning("prime-density answers are heuristic")
    report = hn_decide_modp(S.cleared().joint(), cfg, _state().budget, scaling, instance=Path(file).stem)
    _emit(to_json(_timed(report)), "modp.json")
    return 0


@hn_group.command("prime-density")
@click.argument("file")
@click.option("--primes", default="2..100", show_default=True, help="Inclusive prime range lo..hi")
@click.option("--scaling", type=int, default=None)
async def prime_density_cmd(file: str, primes: str, scaling: int | None) -> int:
    S = _read_system(file)
    _require_parameter_free(S)
    lo, hi = parse_prime_range(primes)
    rows = prime_density_report(S.cleared().joint(), lo, hi, _state().budget, scaling)
    _emit(to_csv(rows, PRIME_FIELDS), "prime_density.csv")
    return 0


@cli.group("hnp")
def hnp_group() -> None:
    """Decide parametric systems over the closure of Q(x)."""


@hnp_group.command("decide-elim")
@click.argument("file")
async def hnp_decide_elim_cmd(file: str) -> int:
    S = _read_system(file).cleared()
    result = hnp_decide_elimination(S, budget=_state().budget)
    witness = None if result.witness is None else render_polynomial(result.witness, S.param_names)
    report = DecisionReport(
        instance=Path(file).stem, answer=result.answer.value, oracle="elimination", witness=witness
    )
    _emit(to_json(_timed(report)), "decision.json")
    return 0


@hnp_group.command("decide")
@click.argument("file")
@click.option("--D", "D", type=int, default=None, help="Explicit specialization range {1..D}")
@click.option("--growth-c", type=int, default=None, help="Use D = 3*2^ceil((s*log2 s)^c)")
@click.option("--trials", type=int, default=5, show_default=True)
@click.option("--oracle", type=click.Choice(["groebner", "modp"]), default="groebner", show_default=True)
@click.option("--amplification", type=int, default=4, show_default=True, help="Repetitions of the prime oracle")
@click.option("--seed", type=int, default=None, help="Trial seed (default HNP_DEFAULT_SEED)")
@click.option("--primes", default="2..500", show_default=True)
@click.option("--samples", type=int, default=None)
@click.option("--tau", default="1/5", show_default=True)
@click.option("--normalize/--no-normalize", default=True, show_default=True, help="Normalize before specializing")
@click.option("--concurrent", is_flag=True, help="Run trials in worker threads")
async def hnp_decide_cmd(
    file: str,
    D: int | None,
    growth_c: int | None,
    trials: int,
    oracle: str,
    amplification: int,
    seed: int | None,
    primes: str,
    samples: int | None,
    tau: str,
    normalize: bool,
    concurrent: bool,
) -> int:
    S = _read_system(file)
    if normalize:
        S, _ = normalize_system(S)
    seed = get_settings().default_seed if seed is None else seed
    cfg = ReductionConfig(
        D=D,
        growth_c=growth_c,
        trials=trials,
        amplification=amplification,
        oracle=oracle,
        seed=seed,
        modp=_sampler(primes, samples, tau, seed),
    )
    budget = _state().budget
    instance = Path(file).stem
    if concurrent:
        transcript = await hnp_decide_randomized_async(S, cfg, budget, instance)
    else:
        transcript = hnp_decide_randomized(S, cfg, budget, instance)
    _emit(to_json(_timed(transcript)), "transcript.json")
    return 2 if transcript.answer == "BUDGET_EXCEEDED" else 0


@cli.group("cert")
def cert_group() -> None:
    """Nullstellensatz certificates a(x) = sum g_i f_i."""


@cert_group.command("find")
@click.argument("file")
async def cert_find_cmd(file: str) -> int:
    S = _read_system(file).cleared()
    cert = find_certificate(S, _state().budget)
    report = verify_certificate(S, cert)
    _emit(to_json({"certificate": certificate_to_json(cert, S), "report": report.model_dump(mode="json")}), "certificate.json")
    return 0


@cert_group.command("verify")
@click.argument("file")
@click.argument("certificate")
async def cert_verify_cmd(file: str, certificate: str) -> int:
    S = _read_system(file).cleared()
    cert = certificate_from_json(_read_json(certificate), S)
    _emit(to_json(verify_certificate(S, cert)), "certificate_report.json")
    return 0


@cert_group.command("search")
@click.argument("file")
@click.option("--dy", type=int, default=None, help="Bound on deg_y(g_i f_i) (default 2^k)")
@click.option("--dx", type=int, default=None, help="Bound on deg_x (default k*2^k)")
async def cert_search_cmd(file: str, dy: int | None, dx: int | None) -> int:
    """Bounded-degree linear-algebra certificate search."""
    S = _read_system(file).cleared()
    d_y = 2**S.k if dy is None else dy
    d_x = S.k * 2**S.k if dx is None else dx
    cert = bounded_degree_search(S, d_y, d_x)
    payload: dict[str, Any] = {"found": cert is not None, "d_y": d_y, "d_x": d_x}
    if cert is not None:
        payload["certificate"] = certificate_to_json(cert, S)
    _emit(to_json(payload), "certificate_search.json")
    return 0


@cli.group("alg")
def alg_group() -> None:
    """Resultants, discriminants, primitive elements and witnesses."""


_params_option = click.option("--params", default="", help="Comma separated parameter names")
_var_option = click.option("--var", default="y", show_default=True, help="The polynomial variable")


@alg_group.command("resultant")
@click.argument("p")
@click.argument("q")
@_params_option
@_var_option
async def alg_resultant_cmd(p: str, q: str, params: str, var: str) -> int:
    names = _names(params)
    value = sylvester_resultant(_univariate(p, names, var), _univariate(q, names, var))
    _emit(to_json({"resultant": render_coefficient(value, names)}))
    return 0


@alg_group.command("disc")
@click.argument("p")
@_params_option
@_var_option
async def alg_disc_cmd(p: str, params: str, var: str) -> int:
    names = _names(params)
    value = discriminant(_univariate(p, names, var))
    _emit(
        to_json(
            {
                "discriminant": render_coefficient(value, names),
                "convention": "(-1)^(N(N-1)/2) * Res(p, p') / lc(p)",
            }
        )
    )
    return 0


@alg_group.command("minpoly-sum")
@click.argument("p")
@click.argument("q")
@click.option("--c", "c", type=int, default=1, show_default=True)
@_params_option
@_var_option
async def alg_minpoly_sum_cmd(p: str, q: str, c: int, params: str, var: str) -> int:
    names = _names(params)
    out = minpoly_sum(_univariate(p, names, var), _univariate(q, names, var), c)
    _emit(to_json({"c": c, "minpoly": _render_univariate(out, names, var)}))
    return 0


@alg_group.command("prim-elem")
@click.argument("polys", nargs=-1, required=True)
@_var_option
async def alg_prim_elem_cmd(polys: tuple[str, ...], var: str) -> int:
    """Primitive element of Q(beta_1, ..., beta_r) given the minimal polynomials."""
    chain = primitive_element_chain([_univariate(text, (), var) for text in polys])
    if chain.status == "degenerate":
        logger.warning("degenerate case: the compositum has smaller degree than the product of the degrees")
    payload = {
        "constants": list(chain.constants),
        "minpoly": _render_univariate(chain.minpoly, (), var),
        "status": chain.status,
        "steps": [{"index": s.index, "c": s.c, "bound": s.bound, "status": s.status} for s in chain.steps],
    }
    _emit(to_json(payload))
    return 0


@alg_group.command("make-integral")
@click.argument("p")
@_params_option
@_var_option
async def alg_make_integral_cmd(p: str, params: str, var: str) -> int:
    names = _names(params)
    g, d = make_integral(_univariate(p, names, var), len(names))
    _emit(to_json({"g": _render_univariate(g, names, var), "d": render_polynomial(d, names)}))
    return 0


@alg_group.command("witness-check")
@click.argument("file")
@click.argument("witness")
@click.option("--alpha", default=None, help="Also specialize at this comma separated point")
async def alg_witness_check_cmd(file: str, witness: str, alpha: str | None) -> int:
    S = _read_system(file)
    w = witness_from_json(_read_json(witness), S)
    valid = check_witness(S, w)
    payload: dict[str, Any] = {"valid": valid}
    if alpha is not None and valid:
        special = specialize_witness(w, _integers(alpha), S)
        payload["specialization"] = {
            "alpha": [str(a) for a in special.alpha],
            "b_nonzero": special.b_nonzero,
            "b_value": str(special.b_value),
            "minpoly": _render_univariate(special.minpoly, (), w.variable),
            "verified": special.verified,
        }
    _emit(to_json(payload), "witness.json")
    return 0


@cli.group("experiment")
def experiment_group() -> None:
    """Empirical checks of the specialization bounds."""


@experiment_group.command("equisat")
@click.argument("file")
@click.option("--D", "D", type=int, default=50, show_default=True)
@click.option("--trials", type=int, default=None, help="Sampled mode with this many points")
@click.option("--exhaustive", is_flag=True, help="Enumerate all of {1..D}^m")
@click.option("--growth-c", type=int, default=None)
@click.option("--seed", type=int, default=None)
async def experiment_equisat_cmd(
    file: str, D: int, trials: int | None, exhaustive: bool, growth_c: int | None, seed: int | None
) -> int:
    if exhaustive == (trials is not None):
        raise UsageError("choose exactly one of --exhaustive and --trials")
    report = equisat_experiment(
        _read_system(file),
        D,
        trials=trials,
        seed=get_settings().default_seed if seed is None else seed,
        mode="exhaustive" if exhaustive else "sampled",
        growth_c=growth_c,
        budget=_state().budget,
        instance=Path(file).stem,
    )
    _emit(to_csv([report], _csv_fields(EquisatReport)), "equisat.csv")
    return 0


@experiment_group.command("identity-lemma")
@click.argument("poly")
@click.option("--vars", "var_names", default="x1,x2", show_default=True)
@click.option("--range", "value_range", default="1..100", show_default=True, help="lo..hi")
@click.option("--trials", type=int, default=None, help="Sampled mode with this many points")
@click.option("--seed", type=int, default=None)
async def experiment_identity_cmd(poly: str, var_names: str, value_range: str, trials: int | None, seed: int | None) -> int:
    lo, hi = parse_prime_range(value_range)
    f = parse_polynomial(poly, (), _names(var_names))
    if f.denominator is not None and not f.denominator.is_constant():
        raise UsageError("identity-lemma takes a polynomial")
    report = identity_lemma_check(
        f.poly,
        lo,
        hi,
        mode="sampled" if trials is not None else "exhaustive",
        trials=trials,
        seed=get_settings().default_seed if seed is None else seed,
    )
    _emit(to_csv([report], _csv_fields(IdentityLemmaReport)), "identity_lemma.csv")
    return 0


@experiment_group.command("error-budget")
@click.option("--s", "s", type=int, required=True)
@click.option("--D", "D", type=int, required=True)
@click.option("--amplification", type=int, default=4, show_default=True)
@click.option("--growth-c", type=int, default=None)
async def experiment_error_budget_cmd(s: int, D: int, amplification: int, growth_c: int | None) -> int:
    _emit(to_json(error_budget(s, D, amplification, growth_c)), "error_budget.json")
    return 0


def _csv_fields(model: type[BaseModel]) -> list[str]:
    return [name for name in model.model_fields if name not in ("log_type", "service_name")]


@cli.command("suite")
@click.option("--corpus", "corpus_dir", default="corpus", show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--concurrent", is_flag=True, help="Check instances in worker threads")
async def suite_cmd(corpus_dir: str, seed: int | None, concurrent: bool) -> int:
    """Run every acceptance check over a labeled corpus and print one CSV row per instance."""
    corpus = Corpus.load(corpus_dir)
    seed = get_settings().default_seed if seed is None else seed
    budget = _state().budget
    if concurrent:
        rows = await run_corpus_suite_async(corpus, seed=seed, budget=budget)
    else:
        rows = run_corpus_suite(corpus, seed=seed, budget=budget)
    failed = [row.instance for row in rows if not row.passed]
    if failed:
        logger.warning(f"{len(failed)} corpus rows failed: {', '.join(failed)}")
    _emit(to_csv(rows, SUITE_FIELDS), "suite.csv")
    return 0


async def run(argv: Sequence[str]) -> int:
    """Dispatch ``argv`` and map failures onto exit codes."""
    try:
        result = await cli.main(args=list(argv), prog_name="hnpkit", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except BudgetExceeded as e:
        logger.warning(str(e))
        click.echo(to_json(BudgetReport(cap=e.cap, limit=e.limit, observed=e.observed)))
        return 2
    except ParseError as e:
        click.echo(f"parse error: {e}", err=True)
        return 1
    except (UsageError, PreconditionError, DegenerateCaseError, InexactDivisionError) as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except ValidationError as e:
        click.echo(f"invalid configuration: {e}", err=True)
        return 1
    except Exception:
        logger.exception("unexpected failure")
        raise
    finally:
        flush_tracing()
    return result if isinstance(result, int) else 0
