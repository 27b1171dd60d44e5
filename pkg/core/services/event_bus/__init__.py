"""Event bus service module."""
from .event_bus import Event, EventBus

__all__ = ['Event', 'EventBus']
