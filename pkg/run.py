#!/usr/bin/env python3
"""
truncdp - range-adherent differentially private Laplace mechanism.
Command-line front end.

Exit codes: 0 success, 1 input error, 2 verification failure,
3 location or true value inside a constraint.
"""
import csv
import json
import sys

import click
import numpy as np

from config import Config
from truncdp import configure_logging
from truncdp.errors import InfeasibleLocationError, TruncDPError
from truncdp.models.constraint import ConfigClass, classify, location_view
from truncdp.models.privacy import PrivacyParams
from truncdp.services.config_file import load_config_file
from truncdp.services.laplace_core import laplace_pdf, normalization
from truncdp.services.mechanism_service import build, plan_for, sample_many
from truncdp.services.sigma_uniform import naive_plan
from truncdp.services.verifier import naive_violation_demo, verify_grid

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFICATION_FAILED = 2
EXIT_INFEASIBLE = 3


def fmt(value):
    return format(value, Config.FLOAT_FORMAT)


def emit(record, as_json):
    """Print a record as one JSON object or as key=value lines."""
    if as_json:
        click.echo(json.dumps(record))
        return
    for key, value in record.items():
        if isinstance(value, float):
            value = fmt(value)
        elif value is None:
            value = '-'
        click.echo(f'{key}={value}')


class TruncDPGroup(click.Group):
    """Maps package errors onto the exit-code contract."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args=args, prog_name=prog_name, complete_var=complete_var,
                              standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            code = EXIT_INPUT_ERROR
        except click.Abort:
            click.echo('Aborted!', err=True)
            code = EXIT_INPUT_ERROR
        except InfeasibleLocationError as e:
            click.echo(f'Error: {e}', err=True)
            code = EXIT_INFEASIBLE
        except TruncDPError as e:
            click.echo(f'Error: {e}', err=True)
            code = EXIT_INPUT_ERROR
        else:
            code = rv if isinstance(rv, int) else EXIT_OK

        if standalone_mode:
            sys.exit(code)
        return code


@click.group(cls=TruncDPGroup)
@click.option('--verbose', is_flag=True, help='Log debug output to stderr.')
def cli(verbose):
    """Truncated and normalized Laplace mechanism."""
    configure_logging(Config, level='DEBUG' if verbose else None)


config_argument = click.argument('config_path', type=click.Path(dir_okay=False))


@cli.command('classify')
@config_argument
@click.option('--json', 'as_json', is_flag=True, help='Print one JSON object.')
def classify_command(config_path, as_json):
    """Print the class of a constraint configuration."""
    _, config = load_config_file(config_path)
    config_class = classify(config)
    if as_json:
        emit({'class': config_class.value}, as_json=True)
    else:
        click.echo(config_class.value)
    return EXIT_OK


@cli.command('sigma')
@config_argument
@click.option('--location', type=float, default=None,
              help='True response; required for a single-infinite configuration.')
@click.option('--precision', type=click.IntRange(0, 12), default=Config.SIGMA_PRECISION,
              show_default=True, help='Decimal places of a uniform sigma.')
@click.option('--json', 'as_json', is_flag=True, help='Print one JSON object.')
def sigma_command(config_path, location, precision, as_json):
    """Compute the scale parameter for a configuration."""
    params, config = load_config_file(config_path)
    config_class = classify(config)

    if config_class is ConfigClass.SINGLE_INFINITE and location is None:
        raise click.UsageError('--location is required for a single-infinite configuration')

    plan = plan_for(config, params, precision_d=precision)
    mech = None
    normalization_factor = None
    if location is not None:
        mech = build(config, params, location, plan=plan)
        sigma, normalization_factor = mech.sigma, mech.n
    else:
        sigma = plan.sigma_for(0.0)
        if config_class is ConfigClass.EMPTY:
            normalization_factor = normalization(location_view(config, 0.0), sigma).n

    record = {
        'class': config_class.value,
        'sigma': sigma,
        'normalization': normalization_factor,
        'epsilon': params.epsilon,
        'delta_f': params.delta_f,
    }
    # nested records only fit the JSON form
    if as_json:
        record['plan'] = plan.describe()
        if mech is not None:
            record['mechanism'] = mech.describe()
    emit(record, as_json)
    return EXIT_OK


@cli.command('sample')
@config_argument
@click.option('--true-value', type=float, required=True, help='True query response.')
@click.option('-n', '--count', 'count', type=click.IntRange(min=1), default=1, show_default=True,
              help='Number of noisy responses.')
@click.option('--seed', type=int, default=Config.SAMPLE_SEED, show_default=True,
              help='Seed of the PCG64 uniform stream.')
def sample_command(config_path, true_value, count, seed):
    """Draw noisy responses, one per line."""
    params, config = load_config_file(config_path)
    mech = build(config, params, true_value)
    for value in sample_many(mech, count, seed=seed):
        click.echo(fmt(float(value)))
    return EXIT_OK


@cli.command('verify')
@config_argument
@click.option('--naive', is_flag=True, help='Use delta_f / epsilon at every location.')
@click.option('--locations', type=click.IntRange(min=2), default=Config.VERIFY_LOCATIONS, show_default=True)
@click.option('--outputs', type=click.IntRange(min=2), default=Config.VERIFY_OUTPUTS, show_default=True)
@click.option('--max-i', type=click.FloatRange(min=0, min_open=True), default=Config.VERIFY_MAX_I,
              show_default=True, help='Largest location distance in units of delta_f.')
@click.option('--padding', type=click.FloatRange(min=0), default=Config.VERIFY_OUTPUT_PADDING,
              show_default=True, help='Output window padding in units of delta_f / epsilon.')
@click.option('--tail-sigmas', type=click.FloatRange(min=0), default=None,
              help='Also cover outputs this many scales around each location.')
@click.option('--json', 'as_json', is_flag=True, help='Print one JSON object.')
def verify_command(config_path, naive, locations, outputs, max_i, padding, tail_sigmas, as_json):
    """Check the privacy guarantee on a grid; exit 2 on any violation."""
    params, config = load_config_file(config_path)
    plan = naive_plan(params, classify(config)) if naive else plan_for(config, params)
    report = verify_grid(config, params, plan, n_locations=locations, n_outputs=outputs,
                         max_i=max_i, padding=padding, tail_sigmas=tail_sigmas)

    if as_json:
        emit(report.to_dict(), as_json=True)
    else:
        click.echo(f'checks={report.total_checks}')
        click.echo(f'failures={len(report.failures)}')
        click.echo(f'max_ratio_over_bound={fmt(report.max_ratio_over_bound)}')
        if report.failures:
            click.echo(f'worst: {report.worst}')

    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


@cli.command('curve')
@config_argument
@click.option('--location', type=float, required=True, help='True response.')
@click.option('--from', 'x_from', type=float, required=True)
@click.option('--to', 'x_to', type=float, required=True)
@click.option('--points', type=click.IntRange(min=2), default=1000, show_default=True)
@click.option('--out', 'out_path', default='-', show_default=True, help='CSV destination.')
def curve_command(config_path, location, x_from, x_to, points, out_path):
    """Write the plain and the truncated, normalized density as CSV."""
    params, config = load_config_file(config_path)
    mech = build(config, params, location)

    xs = np.linspace(x_from, x_to, points)
    original = laplace_pdf(xs, mech.laplace)
    truncated = mech.pdf_many(xs)

    try:
        with click.open_file(out_path, 'w', encoding='utf-8') as fh:
            writer = csv.writer(fh, lineterminator='\n')
            writer.writerow(['x', 'density_original', 'density_truncated_normalized'])
            for row in zip(xs, original, truncated):
                writer.writerow([fmt(float(v)) for v in row])
    except OSError as e:
        raise click.FileError(out_path, hint=e.strerror)
    return EXIT_OK


@cli.command('demo')
@click.option('--epsilon', type=float, default=1.0, show_default=True)
@click.option('--delta-f', type=float, default=1.0, show_default=True)
@click.option('--i', 'i', type=click.FloatRange(min=0, min_open=True), default=1.0, show_default=True,
              help='Distance between the two true responses in units of delta_f.')
@click.option('--json', 'as_json', is_flag=True, help='Print one JSON object.')
def demo_command(epsilon, delta_f, i, as_json):
    """Show the naive scale breaking the guarantee next to an infinite constraint."""
    evaluation = naive_violation_demo(PrivacyParams(epsilon=epsilon, delta_f=delta_f), i=i)
    emit(evaluation.to_dict(), as_json)
    return EXIT_OK


if __name__ == '__main__':
    cli()
