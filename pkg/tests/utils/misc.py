import os
import unittest

SLOW_TESTS_VARIABLE = "MBQC_SLOW_TESTS"


def slow_tests_enabled() -> bool:
    return os.environ.get(SLOW_TESTS_VARIABLE, "") not in ("", "0")


# Long reproductions only run when the environment asks for them
slow_test = unittest.skipUnless(slow_tests_enabled(), f"set {SLOW_TESTS_VARIABLE}=1 to run")
