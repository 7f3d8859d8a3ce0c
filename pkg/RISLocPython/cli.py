"""
Command line entry point: risloc <subcommand> [options].

Copyright 2026, The RISLocPython developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import sys
import json
import logging
import argparse

from .errors import RISLocError
from .settings import SCALES, VERSION
from .config import make_config, load_config
from .experiments import run_peb_heatmap, run_efi_vs_distance, run_gain_comparison, run_focusing_eval
from .suite import run_proposition_suite
from . import utils

logger = logging.getLogger(__name__)

RUNNERS = {
    'peb-map': (run_peb_heatmap, "PEB over a horizontal grid with a random RIS profile"),
    'efi-sweep': (run_efi_vs_distance, "EFI of distance and angles against the UE distance"),
    'gain-compare': (run_gain_comparison, "spatial gain against power gain, Monte Carlo over random profiles"),
    'focus-eval': (run_focusing_eval, "PEB and SNR around a focusing profile"),
    'prop-suite': (run_proposition_suite, "structural checks of the bound engine"),
}


def _u64(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("the seed must be an unsigned 64-bit integer.")
    return(value)


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("the thread count must be at least 1.")
    return(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='risloc',
                                     description="Localization bounds for RIS-aided asynchronous positioning.")
    parser.add_argument('--version', action='version', version='%(prog)s ' + VERSION)
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, (_, help_text) in RUNNERS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument('--config', help="JSON configuration file or http(s) URL, merged over the built-in defaults")
        sub.add_argument('--out', default='.', help="output directory (default: current directory)")
        sub.add_argument('--seed', type=_u64, help="master seed; overrides the configuration")
        sub.add_argument('--threads', type=_positive, default=1, help="worker threads (default: 1)")
        sub.add_argument('--scale', choices=SCALES, help="array-size preset (default: desk)")
        sub.add_argument('--log-level', default='WARNING',
                         choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])
        if name == 'prop-suite':
            sub.add_argument('--mis-flag', action='store_true',
                             help="evaluate the far-field collapse check with the spherical model (negative control)")
    return(parser)


def _print_summary(command, summary):
    print(command + ' summary:')
    print(json.dumps(utils.jsonable(summary), indent=2, sort_keys=True))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format='%(asctime)s [%(levelname)s] %(name)s: %(message)s')
    try:
        if args.config:
            config = load_config(args.config, args.command, args.scale, args.seed)
        else:
            config = make_config(args.command, args.scale or 'desk', seed=args.seed)
        runner = RUNNERS[args.command][0]
        if args.command == 'prop-suite':
            report = runner(config, mis_flag=args.mis_flag, threads=args.threads, out_dir=args.out)
            _print_summary(args.command, {c['name']: c['passed'] for c in report['checks']})
            return(0 if report['all_passed'] else 1)
        result = runner(config, threads=args.threads, out_dir=args.out)
    except RISLocError as e:
        logger.error('%s failed: %s', args.command, e)
        print('error: ' + str(e), file=sys.stderr)
        return(2)
    _print_summary(args.command, result.summary)
    return(0)


if __name__ == '__main__':
    sys.exit(main())
