"""Pipeline failures, each tied to the stage that raised it and a process exit code."""


class PipelineError(RuntimeError):
    exit_code = 1
    stage = "pipeline"

    def __str__(self) -> str:
        return f"[{self.stage}] {super().__str__()}"


class InputError(PipelineError):
    exit_code = 2
    stage = "input"


class TooFewDocumentsError(InputError):
    exit_code = 3


class NoClustersError(PipelineError):
    exit_code = 4
    stage = "clustering"


class NoCandidatesError(PipelineError):
    exit_code = 5
    stage = "wordgraph"


class EmptySummaryError(PipelineError):
    exit_code = 6
    stage = "ilpselect"
