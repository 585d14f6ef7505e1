import logging
from abc import ABC, abstractmethod
from typing import Any, Dict

from models import RunConfig

logger = logging.getLogger(__name__)


class Step(ABC):
    """
    Base class for the command-line steps. Each step runs one toolkit
    operation on a resolved RunConfig and returns a JSON-ready result.
    """

    def __init__(self, name: str, description: str):
        """
        Initialize a step with a name and description.

        Args:
            name: The name of the step
            description: A description of what this step does
        """
        self.name = name
        self.description = description

    def execute(self, config: RunConfig) -> Dict[str, Any]:
        """
        Run the step and wrap its result.

        Args:
            config: Resolved run configuration

        Returns:
            Dict with "status", "result" and "config"

        Raises:
            Exception: Whatever the underlying operation raises; the runner
            classifies it
        """
        logger.info("Starting %s step...", self.name)
        try:
            result = self.run(config)
        except Exception as e:
            logger.info("Error in %s step: %s", self.name, e)
            raise
        logger.info("%s step completed", self.name)
        return {"status": "success", "result": result, "config": config.model_dump(mode="json")}

    @abstractmethod
    def run(self, config: RunConfig) -> Any:
        """
        Perform the operation.

        Args:
            config: Resolved run configuration

        Returns:
            A pydantic model, dict or list describing the outcome
        """

    def __str__(self) -> str:
        return f"Step: {self.name} - {self.description}"

    def __repr__(self) -> str:
        return f"Step(name='{self.name}', description='{self.description}')"
