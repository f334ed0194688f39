from .batch_task import BatchTask
from .kill_switch import (
    KillSwitch,
    KillSwitchError,
    AnyFailedSwitch,
    CountSwitch,
    RateSwitch,
)
