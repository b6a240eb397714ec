import os
from typing import Any, Literal, Type, Union, cast

from oim_lab.utils.modeling import ConfigSchema
from oim_lab.utils.modeling.base_schema import is_obj_type_valid

LogLevelEnum = Literal["crit", "err", "warning", "info", "debug"]
LogTargetEnum = Literal["stderr", "stdout"]


class LoggingSchema(ConfigSchema):
    class Raw(ConfigSchema):
        """
        Logging configuration.

        ---
        level: Global logging level.
        target: Logging stream target. "from-env" uses $OIM_LOGGING_TARGET and defaults to "stderr".
        """

        level: LogLevelEnum = "info"
        target: Union[LogTargetEnum, Literal["from-env"]] = "from-env"

    _LAYER = Raw

    level: LogLevelEnum
    target: LogTargetEnum

    def _target(self, raw: Raw) -> LogTargetEnum:
        if raw.target == "from-env":
            target = os.environ.get("OIM_LOGGING_TARGET") or "stderr"
            if not is_obj_type_valid(target, cast(Type[Any], LogTargetEnum)):
                raise ValueError(f"logging target '{target}' read from $OIM_LOGGING_TARGET is invalid")
            return cast(LogTargetEnum, target)
        return raw.target
