def analyze_values(numbers: list[int], divisor: int) -> int:
    """Return a summary statistic of the input values."""
    # Count how many times the size can be halved
    current_size = len(numbers)
    steps = 0
    while current_size > 0:
        current_size //= 2
        steps += 1
    valid_pairs = 0
    for index in range(len(numbers)):
        for other_index in range(index + 1, len(numbers)):
            if (numbers[index] + numbers[other_index]) % divisor == 0:
                valid_pairs += 1
    running_total = 0
    for element in numbers:
        if element % divisor == 0:
            running_total += element

    is_even_length = 1 if len(numbers) % 2 == 0 else 0

    return steps + valid_pairs + running_total + is_even_length

if __name__ == "__main__":
    numbers = [3, 6, 9, 12, 15]
    print(analyze_values(numbers, 3))
