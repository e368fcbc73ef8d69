"""Run script

Can be used to run the steps of an experiment by just providing a
configuration file and calling it with the flags for the respective steps
that should be run.  Steps are executed in the order synth, train, eval,
active; the first failing step stops the run.

For more information on the available flags and on how to call this script:
python run.py --help
"""
import argparse
import logging
import sys
import time

from umgnet import cli
from umgnet.utils import print_time

logger = logging.getLogger(__name__)

STEPS = ("synth", "train", "eval", "active")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument(
        '--config',
        type=str,
        required=True,
        help='path to config file')
    for step in STEPS:
        parser.add_argument(
            '--' + step,
            action="store_true",
            dest='run_' + step,
            help='set if the %s step should be executed' % step)
    parser.add_argument(
        '--seed',
        type=int,
        default=None,
        help='overrides general.seed of the config file')
    parser.add_argument(
        '--out',
        type=str,
        default=None,
        help=('output directory; each step writes into its own '
              'subdirectory if set'))
    args = parser.parse_args()

    steps = [step for step in STEPS if getattr(args, 'run_' + step)]
    if not steps:
        parser.error("no step selected, use one or more of %s" %
                     ", ".join("--" + s for s in STEPS))

    start_time = time.time()
    for step in steps:
        argv = [step, '--config', args.config]
        if args.seed is not None:
            argv += ['--seed', str(args.seed)]
        if args.out is not None:
            argv += ['--out', "%s/%s" % (args.out.rstrip("/"), step)]
        logger.info("running step %s", step)
        status = cli.main(argv)
        if status != 0:
            logger.error("step %s failed, stopping", step)
            return status
    print_time(time.time() - start_time)
    return 0


if __name__ == "__main__":
    logging.basicConfig(
        level=logging.INFO,
        handlers=[logging.StreamHandler(sys.stdout)],
        format='%(asctime)s %(name)s %(levelname)-8s %(message)s')
    sys.exit(main())
