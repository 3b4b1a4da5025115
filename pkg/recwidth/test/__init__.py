# -*- coding: utf-8 -*-
# The test modules collected by the runner.
__all__ = ["test_field_poly", "test_recurrence", "test_multiply", "test_krylov", "test_displacement",
           "test_solvers", "test_recovery", "test_apps", "test_oracle", "test_specfile", "test_cli"]
