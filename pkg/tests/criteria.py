"""Per-criterion PASS/FAIL lines for the acceptance suite."""
import contextlib
import time

RESULTS: list[str] = []


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Run a block as one criterion; record and print its outcome, re-raising failures."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"criterion {number:2d} FAIL  {title} ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        RESULTS.append(line)
        print(line)
        raise
    line = f"criterion {number:2d} PASS  {title} [{time.perf_counter() - t0:.2f} s]"
    RESULTS.append(line)
    print(line)
