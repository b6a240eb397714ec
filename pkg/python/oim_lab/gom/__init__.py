from .smoothness import GomReport, UpdateBoundReport, gom_rhs_exact, verify_gom, verify_update_bound

__all__ = ["GomReport", "UpdateBoundReport", "gom_rhs_exact", "verify_gom", "verify_update_bound"]
