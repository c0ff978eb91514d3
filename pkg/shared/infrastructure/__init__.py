# Infrastructure layer - Shared implementations
