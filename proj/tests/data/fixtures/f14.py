def compute_total(nums: list[int], divisor: int) -> int:
    largest = nums[0]
    for candidate in nums:
        if candidate > largest:
            largest = candidate
    # Count how many times the size can be halved
    remaining = len(nums)
    halving_count = 0
    while remaining > 0:
        remaining //= 2
        halving_count += 1

    # Flag even-length input
    parity_flag = 1 if len(nums) % 2 == 0 else 0

    total = 0
    for value in nums:
        if value % divisor == 0:
            total += value
    # Count pairs whose sum is divisible by k
    valid_pairs = 0
    for index in range(0, len(nums)):
        for j in range(index + 1, len(nums)):
            if (nums[index] + nums[j]) % divisor == 0:
                valid_pairs += 1

    # Collect doubled values larger than k
    doubled_values = []
    for index in range(0, len(nums)):
        if nums[index] > divisor:
            doubled_values.append(nums[index] * 2)
    return largest + halving_count + parity_flag + total + valid_pairs + len(doubled_values)

if __name__ == "__main__":
    nums = [3, 6, 9, 12, 15]
    print(compute_total(nums, 3))
