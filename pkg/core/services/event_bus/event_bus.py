"""Event bus for simulation and controller notifications."""
from typing import Dict, List, Callable, Any, Optional
from dataclasses import dataclass, field
from core.services.logging.logging_service import setup_logger

logger = setup_logger(__name__)


@dataclass
class Event:
    """Represents a system event."""
    type: str
    source: str
    data: Dict[str, Any]
    tick: Optional[int] = None

    def __getitem__(self, key):
        """Allow dictionary-like access to data field."""
        return self.data[key]

    def get(self, key, default=None):
        """Allow dictionary-like get access to data field."""
        return self.data.get(key, default)


class EventBus:
    """In-process event bus.

    Delivery is synchronous and in subscription order, so a simulation run
    observes its own events in tick order.
    """

    def __init__(self, keep_history: bool = True):
        self.subscribers: Dict[str, List[Callable[[Event], None]]] = {}
        self.event_history: List[Event] = []
        self.keep_history = keep_history

    def publish(self, event: Event) -> None:
        """Publish an event to all subscribers."""
        logger.debug(f"Publishing event: {event.type} from {event.source}")
        if self.keep_history:
            self.event_history.append(event)

        # Copy to allow (un)subscription from inside a handler
        for callback in list(self.subscribers.get(event.type, [])):
            try:
                callback(event)
            except Exception as e:
                logger.error(f"Error in event handler for {event.type}: {str(e)}")

    def subscribe(self, event_type: str, callback: Callable[[Event], None]) -> None:
        """Subscribe to events of a specific type."""
        if event_type not in self.subscribers:
            self.subscribers[event_type] = []
        if callback not in self.subscribers[event_type]:
            self.subscribers[event_type].append(callback)
            logger.debug(f"Added subscriber for {event_type}")

    def unsubscribe(self, event_type: str, callback: Callable[[Event], None]) -> None:
        """Unsubscribe from events of a specific type."""
        if event_type in self.subscribers and callback in self.subscribers[event_type]:
            self.subscribers[event_type].remove(callback)
            logger.debug(f"Removed subscriber for {event_type}")

    def get_event_history(self, event_type: Optional[str] = None) -> List[Event]:
        """Get the history of published events, optionally filtered by type."""
        if event_type is None:
            return self.event_history.copy()
        return [e for e in self.event_history if e.type == event_type]

    def clear_history(self) -> None:
        """Clear the event history."""
        self.event_history.clear()
