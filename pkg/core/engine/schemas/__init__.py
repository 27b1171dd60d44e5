from .command_result import ExitCode, CommandResult

__all__ = ['ExitCode', 'CommandResult']
