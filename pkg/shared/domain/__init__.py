# Domain layer - Shared abstractions
