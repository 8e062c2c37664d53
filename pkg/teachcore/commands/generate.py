from logging import getLogger

from teachcore.model import dump_instance
from teachcore.verifier import GeneratorParams, generate_instance, certify
from .request import RunRequest, CommandResult, ExitCode, OutputFormat
from .table import render_machine

__all__ = ["generator_params", "cmd_generate"]
log = getLogger(__name__)


def generator_params(req: RunRequest, config=None) -> GeneratorParams:
    values = dict(kind=req.kind, dimension=req.dimension, pool_size=req.pool_size, seed=req.seed,
                  mode=req.mode, lattice=req.lattice, both_labels=req.both_labels, k=req.k)
    if config is not None:
        values.update(low=config.generator.low, high=config.generator.high,
                      denominator=config.generator.denominator)
    return GeneratorParams(**values).check()


def cmd_generate(req: RunRequest, config=None) -> CommandResult:
    params = generator_params(req, config)
    inst = generate_instance(params)
    # 書き出す前に証明書を作り直す
    certificate = certify(inst, params)
    dump_instance(inst, req.out)
    log.info("Wrote %s instance to %s", params.kind.value, req.out)

    if req.format is OutputFormat.MACHINE:
        document = dict(kind=certificate.kind.value, out=str(req.out), summary=certificate.summary,
                        certificate=certificate.values)
        return CommandResult(ExitCode.OK, render_machine(document))
    return CommandResult(ExitCode.OK, f"{req.out}: {certificate.summary}")
