from pydantic import BaseModel
from typing import Any, Dict, List, Optional

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


# Report schemas
class CheckResult(BaseModel):
    """One check; `bound` is the rigorous error bound of `value` when one exists"""
    name: str
    passed: bool
    value: Optional[float] = None
    bound: Optional[float] = None
    detail: Optional[str] = None


class RunReport(BaseModel):
    command: str
    inputs: Dict[str, Any] = {}
    results: List[CheckResult] = []
    outputs: Dict[str, Any] = {}
    exit_code: int = EXIT_PASS

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def finalize(self) -> "RunReport":
        """Exit code from the results unless an input error was recorded"""
        if self.exit_code != EXIT_INPUT_ERROR:
            self.exit_code = EXIT_PASS if self.passed else EXIT_CHECK_FAILED
        return self
